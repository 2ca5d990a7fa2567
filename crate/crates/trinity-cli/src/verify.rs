//! Scripted verification suites: each runs a deterministic sweep and emits
//! one `PASS`/`FAIL` line per check, with `#`-prefixed context lines, so the
//! report is grep-friendly.

use num_bigint::BigInt;
use trinity::families::{
    build_abc, build_composites, build_hub_pentagon, build_hub_triangle, build_primes,
    FamilyError, FamilyInstance,
};
use trinity::latin::{
    canonical_group, embed_search, enumerate_spherical_bitrades, EnumerationOptions,
    EnumerationSummary, LatinBitrade,
};
use trinity::surface::{bitrade_from_embedding, triangulation_from_bitrade, tutte_digraph};
use trinity::zlinalg::AbelianGroup;

use crate::{CliError, Suite};

/// A finished suite run: the printable report and its failure count.
pub struct SuiteReport {
    pub text: String,
    pub failed: usize,
}

/// Runs one suite to completion. `max` falls back to a per-suite default.
pub fn run(suite: Suite, max: Option<usize>) -> Result<SuiteReport, CliError> {
    let mut report = Report::default();
    match suite {
        Suite::Families => families(max.unwrap_or(4), &mut report)?,
        Suite::Trinity => trinity_agreement(max.unwrap_or(6), &mut report)?,
        Suite::Roundtrip => roundtrip(max.unwrap_or(6), &mut report)?,
        Suite::Enumerate => enumerate(max.unwrap_or(8), &mut report)?,
    }
    Ok(report.finish())
}

#[derive(Default)]
struct Report {
    text: String,
    passed: usize,
    failed: usize,
}

impl Report {
    fn check(&mut self, name: &str, outcome: Result<(), String>) {
        match outcome {
            Ok(()) => {
                self.text.push_str(&format!("PASS {name}\n"));
                self.passed += 1;
            }
            Err(detail) => {
                self.text.push_str(&format!("FAIL {name}: {detail}\n"));
                self.failed += 1;
            }
        }
    }

    fn info(&mut self, line: &str) {
        self.text.push_str(&format!("# {line}\n"));
    }

    fn finish(mut self) -> SuiteReport {
        self.text
            .push_str(&format!("# {} passed, {} failed\n", self.passed, self.failed));
        SuiteReport { text: self.text, failed: self.failed }
    }
}

/// One family check: the instance builds, realizes its advertised group,
/// survives the connectivity audit, and its rotation is spherical with
/// every face directed.
fn instance_check(built: Result<FamilyInstance, FamilyError>) -> Result<(), String> {
    let instance = built.map_err(|e| format!("build failed: {e}"))?;
    instance.check().map_err(|e| e.to_string())?;
    let audit = instance.digraph().audit();
    if !audit.robust {
        return Err(format!("connectivity audit found weaknesses: {audit:?}"));
    }
    let faces = instance.embedding().trace_faces();
    if faces.genus != 0 {
        return Err(format!("genus {}", faces.genus));
    }
    if !faces.all_directed {
        return Err("a face is not directed".to_string());
    }
    Ok(())
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|q| q * q <= n).all(|q| !n.is_multiple_of(q))
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn families(max: usize, report: &mut Report) -> Result<(), CliError> {
    if max < 2 {
        return Err(CliError::input("the families suite needs --max at least 2"));
    }
    let max = max as u64;
    let mut vectors: Vec<Vec<u64>> = (2..=max).map(|x| vec![x]).collect();
    for x in 2..=max {
        for y in 2..=max {
            vectors.push(vec![x, y]);
        }
    }
    for m in 2..=max {
        for a in &vectors {
            report.check(
                &format!("composites m={m} a={}", join(a)),
                instance_check(build_composites(m, a)),
            );
        }
    }
    for p in (2..=max).filter(|&p| is_prime(p)) {
        for a in 2..=max {
            for n in 0..=(1 + 2 * (a - 1)) as usize {
                report.check(
                    &format!("primes p={p} a={a} n={n}"),
                    instance_check(build_primes(p, &[a], n)),
                );
            }
        }
    }
    for a in 1..=max {
        for b in a..=max {
            for c in b..=max {
                report.check(&format!("abc {a} {b} {c}"), instance_check(build_abc(a, b, c)));
            }
        }
    }
    for m in 1..=max {
        report.check(
            &format!("hub-triangle m={m}"),
            instance_check(build_hub_triangle(m)),
        );
        report.check(
            &format!("hub-pentagon m={m}"),
            instance_check(build_hub_pentagon(m)),
        );
    }
    Ok(())
}

fn enumerated(max: usize) -> Result<EnumerationSummary, CliError> {
    enumerate_spherical_bitrades(max, &EnumerationOptions::default())
        .map_err(|e| CliError::input(e.to_string()))
}

/// The three directed embeddings of a bitrade's triangulation and both
/// canonical groups all present the same finite group.
fn group_agreement(bitrade: &LatinBitrade) -> Result<(), String> {
    let reference = bitrade.canonical_group().map_err(|e| e.to_string())?;
    let black = canonical_group(bitrade.black()).map_err(|e| e.to_string())?;
    if black.group.torsion() != reference {
        return Err(format!(
            "black torsion {} differs from {reference}",
            black.group.torsion()
        ));
    }
    let triangulation = triangulation_from_bitrade(bitrade).map_err(|e| e.to_string())?;
    for class in 0..3 {
        let embedded = tutte_digraph(&triangulation, class).map_err(|e| e.to_string())?;
        let sandpile = embedded
            .digraph()
            .sandpile_group()
            .map_err(|e| e.to_string())?;
        if sandpile != reference {
            return Err(format!(
                "class {class} sandpile {sandpile} differs from {reference}"
            ));
        }
    }
    Ok(())
}

fn trinity_agreement(max: usize, report: &mut Report) -> Result<(), CliError> {
    let summary = enumerated(max)?;
    report.info(&format!("{} bitrades of size at most {max}", summary.bitrades.len()));
    for (i, bitrade) in summary.bitrades.iter().enumerate() {
        report.check(
            &format!("bitrade {i} size {} group agreement", bitrade.size()),
            group_agreement(bitrade),
        );
    }
    Ok(())
}

/// Folding a bitrade into its class-0 directed embedding and unfolding it
/// again preserves the canonical group.
fn fold_unfold(bitrade: &LatinBitrade) -> Result<(), String> {
    let reference = bitrade.canonical_group().map_err(|e| e.to_string())?;
    let triangulation = triangulation_from_bitrade(bitrade).map_err(|e| e.to_string())?;
    let embedded = tutte_digraph(&triangulation, 0).map_err(|e| e.to_string())?;
    let (_, recovered) = bitrade_from_embedding(&embedded).map_err(|e| e.to_string())?;
    let recovered = recovered.ok_or("the unfolded triple system is not a latin bitrade")?;
    let group = recovered.canonical_group().map_err(|e| e.to_string())?;
    if group != reference {
        return Err(format!("recovered group {group} differs from {reference}"));
    }
    Ok(())
}

fn roundtrip(max: usize, report: &mut Report) -> Result<(), CliError> {
    let summary = enumerated(max)?;
    report.info(&format!("{} bitrades of size at most {max}", summary.bitrades.len()));
    for (i, bitrade) in summary.bitrades.iter().enumerate() {
        report.check(
            &format!("bitrade {i} size {} fold-unfold", bitrade.size()),
            fold_unfold(bitrade),
        );
    }
    Ok(())
}

/// Both halves of a bitrade embed into its canonical group.
fn halves_embed(bitrade: &LatinBitrade) -> Result<(), String> {
    let group = bitrade.canonical_group().map_err(|e| e.to_string())?;
    for (side, half) in [("white", bitrade.white()), ("black", bitrade.black())] {
        let embedding = embed_search(half, &group)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("{side} half does not embed in {group}"))?;
        if !embedding.satisfies(half) {
            return Err(format!("{side} embedding violates a triple"));
        }
    }
    Ok(())
}

fn enumerate(max: usize, report: &mut Report) -> Result<(), CliError> {
    let summary = enumerated(max)?;
    for (size, count) in &summary.counts_by_size {
        report.info(&format!("size {size}: {count}"));
    }
    for (group, count) in &summary.group_tally {
        report.info(&format!("group {group}: {count}"));
    }
    let klein = AbelianGroup::new(0, vec![BigInt::from(2), BigInt::from(2)])
        .expect("the Klein four-group is a valid group");
    let mut verdict = Ok(());
    if summary.group_tally.contains_key(&klein.to_string()) {
        verdict = Err(format!("the tally contains {klein}"));
    } else {
        for (i, bitrade) in summary.bitrades.iter().enumerate() {
            match bitrade.canonical_group() {
                Ok(group) if group == klein => {
                    verdict = Err(format!("bitrade {i} realizes {klein}"));
                    break;
                }
                Ok(_) => {}
                Err(e) => {
                    verdict = Err(e.to_string());
                    break;
                }
            }
        }
    }
    report.check("no Z/2 + Z/2 realized", verdict);
    for (i, bitrade) in summary.bitrades.iter().enumerate() {
        report.check(
            &format!("bitrade {i} size {} halves embed", bitrade.size()),
            halves_embed(bitrade),
        );
    }
    Ok(())
}
