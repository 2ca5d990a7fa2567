//! Latin bitrades: validation, line permutations, separation, connectedness,
//! and genus.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::latin::square::{canonical_group, PartialLatinSquare, Triple};
use crate::latin::LatinError;
use crate::zlinalg::AbelianGroup;

/// Checks that `(white, black)` is a latin bitrade: both halves nonempty,
/// same occupied cells, different symbol in every shared cell, and equal
/// symbol sets row by row and column by column.
///
/// Returns the first violation found, with the offending line or cell.
pub fn validate_bitrade(
    white: &PartialLatinSquare,
    black: &PartialLatinSquare,
) -> Result<(), LatinError> {
    if white.is_empty() || black.is_empty() {
        return Err(LatinError::EmptySquare);
    }
    for t in white.triples() {
        match black.symbol_at(&t.row, &t.col) {
            None => {
                return Err(LatinError::CellMismatch { row: t.row.clone(), col: t.col.clone() })
            }
            Some(s) if s == t.sym => {
                return Err(LatinError::CellNotDisjoint {
                    row: t.row.clone(),
                    col: t.col.clone(),
                    sym: t.sym.clone(),
                })
            }
            Some(_) => {}
        }
    }
    for t in black.triples() {
        if white.symbol_at(&t.row, &t.col).is_none() {
            return Err(LatinError::CellMismatch { row: t.row.clone(), col: t.col.clone() });
        }
    }
    for row in white.rows() {
        if white.row_symbols(row) != black.row_symbols(row) {
            return Err(LatinError::RowSymbolMismatch { row: row.to_string() });
        }
    }
    for col in white.cols() {
        if white.col_symbols(col) != black.col_symbols(col) {
            return Err(LatinError::ColSymbolMismatch { col: col.to_string() });
        }
    }
    Ok(())
}

/// The cycles of every line permutation of a bitrade.
///
/// For a row `r`, the permutation sends the white symbol of each cell of `r`
/// to the black symbol of the same cell; columns are analogous.  For a
/// symbol `s`, it sends each row holding `s` in white to the row holding `s`
/// in black within the same column.  The bitrade is separated when every
/// line induces a single cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationReport {
    /// Per row: symbol cycles, each starting at its smallest element.
    pub row_cycles: BTreeMap<String, Vec<Vec<String>>>,
    /// Per column: symbol cycles.
    pub col_cycles: BTreeMap<String, Vec<Vec<String>>>,
    /// Per symbol: row cycles.
    pub sym_cycles: BTreeMap<String, Vec<Vec<String>>>,
    /// True when every line has exactly one cycle.
    pub separated: bool,
}

/// An ordered pair of partial latin squares forming a latin bitrade.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatinBitrade {
    white: PartialLatinSquare,
    black: PartialLatinSquare,
}

impl LatinBitrade {
    /// Validates the pair and wraps it; see [`validate_bitrade`] for the
    /// conditions checked.
    pub fn new(
        white: PartialLatinSquare,
        black: PartialLatinSquare,
    ) -> Result<Self, LatinError> {
        validate_bitrade(&white, &black)?;
        Ok(LatinBitrade { white, black })
    }

    pub fn white(&self) -> &PartialLatinSquare {
        &self.white
    }

    pub fn black(&self) -> &PartialLatinSquare {
        &self.black
    }

    /// Number of triples in each half.
    pub fn size(&self) -> usize {
        self.white.len()
    }

    /// True when no proper subset of the cells forms a bitrade on its own,
    /// i.e. the cells are a single component under the partner relation
    /// that links a cell to the cell of its row (and column) holding the
    /// opposite half's symbol.
    pub fn is_connected(&self) -> bool {
        let cells: Vec<(&str, &str)> = self.white.cells().collect();
        if cells.is_empty() {
            return false;
        }
        let index: BTreeMap<(&str, &str), usize> =
            cells.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut seen = vec![false; cells.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(i) = queue.pop_front() {
            let (row, col) = cells[i];
            let w = self.white.symbol_at(row, col).expect("cell is occupied");
            let b = self.black.symbol_at(row, col).expect("cells coincide");
            let neighbors = [
                self.white.triples().iter().find(|t| t.row == row && t.sym == b),
                self.black.triples().iter().find(|t| t.row == row && t.sym == w),
                self.white.triples().iter().find(|t| t.col == col && t.sym == b),
                self.black.triples().iter().find(|t| t.col == col && t.sym == w),
            ];
            for t in neighbors.into_iter().flatten() {
                let j = index[&(t.row.as_str(), t.col.as_str())];
                if !seen[j] {
                    seen[j] = true;
                    reached += 1;
                    queue.push_back(j);
                }
            }
        }
        reached == cells.len()
    }

    /// Computes the cycles of every row, column, and symbol permutation.
    pub fn separation(&self) -> SeparationReport {
        let mut row_cycles = BTreeMap::new();
        for row in self.white.rows() {
            let perm: BTreeMap<&str, &str> = self
                .white
                .triples()
                .iter()
                .filter(|t| t.row == row)
                .map(|t| {
                    (t.sym.as_str(), self.black.symbol_at(&t.row, &t.col).expect("shared cell"))
                })
                .collect();
            row_cycles.insert(row.to_string(), cycles_of(&perm));
        }
        let mut col_cycles = BTreeMap::new();
        for col in self.white.cols() {
            let perm: BTreeMap<&str, &str> = self
                .white
                .triples()
                .iter()
                .filter(|t| t.col == col)
                .map(|t| {
                    (t.sym.as_str(), self.black.symbol_at(&t.row, &t.col).expect("shared cell"))
                })
                .collect();
            col_cycles.insert(col.to_string(), cycles_of(&perm));
        }
        let mut sym_cycles = BTreeMap::new();
        for sym in self.white.syms() {
            let perm: BTreeMap<&str, &str> = self
                .white
                .triples()
                .iter()
                .filter(|t| t.sym == sym)
                .map(|t| {
                    let partner = self
                        .black
                        .triples()
                        .iter()
                        .find(|u| u.col == t.col && u.sym == sym)
                        .expect("column symbol sets coincide");
                    (t.row.as_str(), partner.row.as_str())
                })
                .collect();
            sym_cycles.insert(sym.to_string(), cycles_of(&perm));
        }
        let separated = row_cycles
            .values()
            .chain(col_cycles.values())
            .chain(sym_cycles.values())
            .all(|cs| cs.len() == 1);
        SeparationReport { row_cycles, col_cycles, sym_cycles, separated }
    }

    pub fn is_separated(&self) -> bool {
        self.separation().separated
    }

    /// Splits every line whose permutation has several cycles into one new
    /// line per cycle, leaving single-cycle lines untouched.  The result is
    /// separated; one pass suffices because splitting one class never
    /// changes the cycle structure of the other two.
    pub fn separate(&self) -> LatinBitrade {
        let report = self.separation();
        let row_names = SplitNames::new(&report.row_cycles, self.white.rows());
        let col_names = SplitNames::new(&report.col_cycles, self.white.cols());
        let sym_names = SplitNames::new(&report.sym_cycles, self.white.syms());

        // A cell's row cycle is the one holding its white symbol; its column
        // cycle likewise.  A triple's symbol cycle is the one holding its own
        // row, in either half.
        let rename = |half: &PartialLatinSquare| -> Vec<Triple> {
            half.triples()
                .iter()
                .map(|t| {
                    let wsym = self.white.symbol_at(&t.row, &t.col).expect("cell is occupied");
                    Triple::new(
                        row_names.resolve(&t.row, wsym),
                        col_names.resolve(&t.col, wsym),
                        sym_names.resolve(&t.sym, &t.row),
                    )
                })
                .collect()
        };
        let white = PartialLatinSquare::new(rename(&self.white))
            .expect("separation preserves the latin property");
        let black = PartialLatinSquare::new(rename(&self.black))
            .expect("separation preserves the latin property");
        LatinBitrade::new(white, black).expect("separation preserves the bitrade conditions")
    }

    /// The genus of the orientable surface triangulated by the bitrade.
    ///
    /// Requires a connected, separated bitrade; with `V` the number of used
    /// labels and `S` the size, the genus is `(2 - (V - S)) / 2`.
    pub fn genus(&self) -> Result<u64, LatinError> {
        if !self.is_connected() {
            return Err(LatinError::NotConnected);
        }
        if !self.is_separated() {
            return Err(LatinError::NotSeparated);
        }
        let labels = (self.white.rows().len()
            + self.white.cols().len()
            + self.white.syms().len()) as i64;
        let doubled = 2 - (labels - self.size() as i64);
        assert!(
            doubled >= 0 && doubled % 2 == 0,
            "a connected separated bitrade triangulates a closed orientable surface"
        );
        Ok((doubled / 2) as u64)
    }

    /// True when the bitrade is connected, separated, and of genus zero.
    pub fn is_spherical(&self) -> bool {
        matches!(self.genus(), Ok(0))
    }

    /// The canonical group: the torsion part of the group presented by
    /// either half (the white half is used; the halves agree for spherical
    /// bitrades, which the trinity tests verify).
    pub fn canonical_group(&self) -> Result<AbelianGroup, LatinError> {
        Ok(canonical_group(&self.white)?.group.torsion())
    }
}

/// Deterministic fresh names for the lines split by `separate`.
struct SplitNames {
    // (line label, cycle member) -> new line label; only multi-cycle lines
    // appear.
    renames: BTreeMap<(String, String), String>,
}

impl SplitNames {
    fn new(cycles: &BTreeMap<String, Vec<Vec<String>>>, existing: BTreeSet<&str>) -> Self {
        let mut taken: BTreeSet<String> =
            existing.into_iter().map(|s| s.to_string()).collect();
        let mut renames = BTreeMap::new();
        for (line, cs) in cycles {
            if cs.len() < 2 {
                continue;
            }
            for (i, cycle) in cs.iter().enumerate() {
                let mut name = format!("{}.{}", line, i + 1);
                let mut tiebreak = 0usize;
                while taken.contains(&name) {
                    tiebreak += 1;
                    name = format!("{}.{}.{}", line, i + 1, tiebreak);
                }
                taken.insert(name.clone());
                for member in cycle {
                    renames.insert((line.clone(), member.clone()), name.clone());
                }
            }
        }
        SplitNames { renames }
    }

    fn resolve(&self, line: &str, member: &str) -> String {
        self.renames
            .get(&(line.to_string(), member.to_string()))
            .cloned()
            .unwrap_or_else(|| line.to_string())
    }
}

/// Decomposes a permutation (given as a map) into cycles, each rotated to
/// start at its smallest element, sorted by starting element.
fn cycles_of(perm: &BTreeMap<&str, &str>) -> Vec<Vec<String>> {
    let mut cycles = Vec::new();
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    for &start in perm.keys() {
        if seen.contains(start) {
            continue;
        }
        let mut cycle = Vec::new();
        let mut cur = start;
        loop {
            cycle.push(cur.to_string());
            seen.insert(cur);
            cur = perm[cur];
            if cur == start {
                break;
            }
        }
        cycles.push(cycle);
    }
    cycles
}
