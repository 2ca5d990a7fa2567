//! Fixed-shape families: fat dipoles and the two hub graphs.
//!
//! * [`build_cyclic_dipole`] puts `n` bundle pairs between two vertices and
//!   realises `Z/n`.
//! * [`build_hub_triangle`] joins a hub to a triangle whose sides are
//!   `m`-wide bundles and realises `Z/(3m+1) ⊕ Z/(3m+1)`; at `m = 1` it is
//!   the bidirected complete graph on four vertices.
//! * [`build_hub_pentagon`] joins a hub to a pentagon one of whose sides is
//!   an `m`-wide bundle and whose opposite corner is stretched into a path of
//!   `m` vertices; it realises `Z/(6m+5) ⊕ Z/(6m+5)`, and at `m = 1` it is
//!   the bidirected wheel on five rim vertices.

use super::bundle::Bundle;
use super::{FamilyError, FamilyInstance};
use crate::digraph::MultiDigraph;
use crate::surface::{EmbeddedDigraph, End};
use crate::zlinalg::{group_from_cyclic_orders, AbelianGroup};
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// Builds the fat dipole with `n ≥ 1` arc pairs, realising `Z/n`.
///
/// The sink is the head-side vertex `v`.
pub fn build_cyclic_dipole(n: u64) -> Result<FamilyInstance, FamilyError> {
    if n < 1 {
        return Err(FamilyError::InvalidParameter {
            name: "n",
            value: n.to_string(),
            requirement: "the dipole needs at least one arc pair",
        });
    }
    let mut d = MultiDigraph::new(["u", "v"])?;
    let bundle = Bundle::add(&mut d, "u", "v", n as usize)?;
    let rotations = BTreeMap::from([
        ("u".to_string(), bundle.u_side()),
        ("v".to_string(), bundle.v_side()),
    ]);
    let embedding = EmbeddedDigraph::new(d, rotations)?;
    Ok(FamilyInstance::new(format!("dipole n={n}"), embedding, AbelianGroup::cyclic(n)))
}

/// Builds the hub-and-triangle graph realising `Z/(3m+1) ⊕ Z/(3m+1)`.
///
/// The rim vertices `b, c, d` carry `m`-wide bundles `b→c→d→b`; the hub `a`
/// is joined to each rim vertex by a single pair and is the sink.
pub fn build_hub_triangle(m: u64) -> Result<FamilyInstance, FamilyError> {
    if m < 1 {
        return Err(FamilyError::InvalidParameter {
            name: "m",
            value: m.to_string(),
            requirement: "the rim bundles need at least one arc pair",
        });
    }
    let mut d = MultiDigraph::new(["b", "c", "d", "a"])?;
    let ab = Bundle::add(&mut d, "a", "b", 1)?;
    let ac = Bundle::add(&mut d, "a", "c", 1)?;
    let ad = Bundle::add(&mut d, "a", "d", 1)?;
    let t = m as usize;
    let bc = Bundle::add(&mut d, "b", "c", t)?;
    let cd = Bundle::add(&mut d, "c", "d", t)?;
    let db = Bundle::add(&mut d, "d", "b", t)?;

    let mut rotations: BTreeMap<String, Vec<End>> = BTreeMap::new();
    let mut a_ends = ac.u_side();
    a_ends.extend(ad.u_side());
    a_ends.extend(ab.u_side());
    rotations.insert("a".to_string(), a_ends);
    let mut b_ends = bc.u_side();
    b_ends.extend(ab.v_side());
    b_ends.extend(db.v_side());
    rotations.insert("b".to_string(), b_ends);
    let mut c_ends = cd.u_side();
    c_ends.extend(ac.v_side());
    c_ends.extend(bc.v_side());
    rotations.insert("c".to_string(), c_ends);
    let mut d_ends = db.u_side();
    d_ends.extend(ad.v_side());
    d_ends.extend(cd.v_side());
    rotations.insert("d".to_string(), d_ends);

    let embedding = EmbeddedDigraph::new(d, rotations)?;
    let order = BigInt::from(3 * m + 1);
    let group = group_from_cyclic_orders([order.clone(), order])?;
    Ok(FamilyInstance::new(format!("hub triangle m={m}"), embedding, group))
}

/// Builds the hub-and-pentagon graph realising `Z/(6m+5) ⊕ Z/(6m+5)`.
///
/// The rim is the cycle `b – c – p_m – e – d – b`, where `p_1, …, p_m` is a
/// path hung between the hub `f` (next to `p_1`) and the rim corners `c` and
/// `e` (next to `p_m`); the side `b – d` is an `m`-wide bundle and every
/// other join is a single pair.  The hub `f` is joined to `b`, `c`, `d`, `e`
/// and `p_1`, and is the sink.
pub fn build_hub_pentagon(m: u64) -> Result<FamilyInstance, FamilyError> {
    if m < 1 {
        return Err(FamilyError::InvalidParameter {
            name: "m",
            value: m.to_string(),
            requirement: "the path needs at least one vertex",
        });
    }
    let path_labels: Vec<String> = (1..=m).map(|j| format!("p{j}")).collect();
    let mut labels = vec!["b", "c", "d", "e"];
    labels.extend(path_labels.iter().map(String::as_str));
    labels.push("f");
    let mut d = MultiDigraph::new(labels)?;

    let fc = Bundle::add(&mut d, "f", "c", 1)?;
    let bc = Bundle::add(&mut d, "b", "c", 1)?;
    let bf = Bundle::add(&mut d, "b", "f", 1)?;
    let df = Bundle::add(&mut d, "d", "f", 1)?;
    let de = Bundle::add(&mut d, "d", "e", 1)?;
    let ef = Bundle::add(&mut d, "e", "f", 1)?;
    let fp = Bundle::add(&mut d, "f", &path_labels[0], 1)?;
    let mut path = Vec::new();
    for pair in path_labels.windows(2) {
        path.push(Bundle::add(&mut d, &pair[0], &pair[1], 1)?);
    }
    let last = path_labels.last().unwrap();
    let pc = Bundle::add(&mut d, last, "c", 1)?;
    let pe = Bundle::add(&mut d, last, "e", 1)?;
    let bd = Bundle::add(&mut d, "b", "d", m as usize)?;

    let mut rotations: BTreeMap<String, Vec<End>> = BTreeMap::new();
    let mut ends = bc.u_side();
    ends.extend(bd.u_side());
    ends.extend(bf.u_side());
    rotations.insert("b".to_string(), ends);
    let mut ends = bc.v_side();
    ends.extend(fc.v_side());
    ends.extend(pc.v_side());
    rotations.insert("c".to_string(), ends);
    let mut ends = df.u_side();
    ends.extend(bd.v_side());
    ends.extend(de.u_side());
    rotations.insert("d".to_string(), ends);
    let mut ends = pe.v_side();
    ends.extend(ef.u_side());
    ends.extend(de.v_side());
    rotations.insert("e".to_string(), ends);
    let mut ends = fp.u_side();
    ends.extend(fc.u_side());
    ends.extend(bf.v_side());
    ends.extend(df.v_side());
    ends.extend(ef.v_side());
    rotations.insert("f".to_string(), ends);
    let m = m as usize;
    for (j, label) in path_labels.iter().enumerate() {
        let mut ends = Vec::new();
        if m == 1 {
            ends.extend(pc.u_side());
            ends.extend(fp.v_side());
            ends.extend(pe.u_side());
        } else if j == 0 {
            ends.extend(path[0].u_side());
            ends.extend(fp.v_side());
        } else if j + 1 < m {
            ends.extend(path[j].u_side());
            ends.extend(path[j - 1].v_side());
        } else {
            ends.extend(pc.u_side());
            ends.extend(path[j - 1].v_side());
            ends.extend(pe.u_side());
        }
        rotations.insert(label.clone(), ends);
    }

    let embedding = EmbeddedDigraph::new(d, rotations)?;
    let order = BigInt::from(6 * (m as u64) + 5);
    let group = group_from_cyclic_orders([order.clone(), order])?;
    Ok(FamilyInstance::new(format!("hub pentagon m={m}"), embedding, group))
}
