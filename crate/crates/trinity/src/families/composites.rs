//! Chain constructions for direct sums of cyclic groups with composite orders.
//!
//! `build_composites(m, [a_1, …, a_k])` realises `⊕ᵢ Z/(m·aᵢ)` on a chain of
//! `2k + 1` vertices `α_k, γ_k, …, α_1, γ_1, α_0`.  Level `i` carries a bundle
//! `B_i` of `m − 1` pairs between `α_i` and `γ_i` and a bundle `C_i` of
//! `a_i − 1` pairs between `α_{i−1}` and `γ_i`; single arcs `P_i : α_i → α_{i−1}`,
//! `Q_i : γ_i → γ_{i+1}`, `X : α_0 → γ_1` and `Y : γ_k → α_k` close the chain
//! into an Eulerian digraph.  The sink is `α_0`.
//!
//! The same skeleton, with some `C_i` arcs rerouted through fresh degree-`p`
//! vertices, realises the prime-power variants; the shared core lives here
//! and the rewiring schedule in the sibling module.

use super::bundle::Bundle;
use super::{FamilyError, FamilyInstance};
use crate::digraph::{ArcId, MultiDigraph};
use crate::surface::{Dir, EmbeddedDigraph, End};
use crate::zlinalg::group_from_cyclic_orders;
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// How many `C_i` slots of each level are rerouted through fresh vertices.
///
/// Level `i` (1-based) reroutes its backward arcs `g_1, …, g_{deltas[i−1]}`
/// through vertices `δ_{i,j}` and its forward arcs `f_1, …, f_{epsilons[i−1]}`
/// through vertices `ε_{i,j}`; `eps10` reroutes the closing arc `X` through
/// `ε_{1,0}`.  The all-zero plan is the plain composite chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RewirePlan {
    pub deltas: Vec<usize>,
    pub epsilons: Vec<usize>,
    pub eps10: bool,
}

impl RewirePlan {
    pub(crate) fn none(k: usize) -> Self {
        RewirePlan { deltas: vec![0; k], epsilons: vec![0; k], eps10: false }
    }
}

/// Arcs that replace one rerouted `C_i` arc: a bundle of `m − 1` pairs to the
/// fresh vertex, one extra arc into it, and one arc onward to the original
/// destination.
struct Reroute {
    bundle: Bundle,
    extra: ArcId,
    single: ArcId,
}

/// One slot of a `C_i` bundle: the plain pair, either half possibly rerouted.
struct CSlot {
    f: Option<ArcId>,
    g: Option<ArcId>,
    delta: Option<Reroute>,
    epsilon: Option<Reroute>,
}

fn alpha(i: usize) -> String {
    format!("a{i}")
}

fn gamma(i: usize) -> String {
    format!("g{i}")
}

fn delta_label(i: usize, j: usize) -> String {
    format!("d{i}.{j}")
}

fn epsilon_label(i: usize, j: usize) -> String {
    format!("e{i}.{j}")
}

/// Builds the chain digraph and its spherical rotation system.
///
/// Callers validate their own parameters; this core only assumes `m ≥ 2`,
/// nonempty `a` with every `aᵢ ≥ 2`, and a plan whose per-level counts fit
/// inside the `a_i − 1` available slots (`epsilons[i] ≤ deltas[i]`).
pub(crate) fn build_chain(
    m: u64,
    a: &[u64],
    plan: &RewirePlan,
) -> Result<EmbeddedDigraph, FamilyError> {
    let k = a.len();
    debug_assert!(m >= 2 && k >= 1);
    debug_assert!(plan.deltas.len() == k && plan.epsilons.len() == k);
    let t = (m - 1) as usize;

    // Vertex declaration order fixes the sink: α_0 is declared last.
    let mut labels: Vec<String> = Vec::new();
    for i in (1..=k).rev() {
        labels.push(alpha(i));
        labels.push(gamma(i));
        for j in (1..=plan.deltas[i - 1]).rev() {
            labels.push(delta_label(i, j));
        }
        for j in (1..=plan.epsilons[i - 1]).rev() {
            labels.push(epsilon_label(i, j));
        }
    }
    if plan.eps10 {
        labels.push(epsilon_label(1, 0));
    }
    labels.push(alpha(0));
    let mut d = MultiDigraph::new(labels.iter().map(String::as_str))?;

    let mut b_bundles: Vec<Bundle> = Vec::with_capacity(k);
    let mut c_slots: Vec<Vec<CSlot>> = Vec::with_capacity(k);
    let mut p_arcs: Vec<ArcId> = Vec::with_capacity(k);
    let mut q_arcs: Vec<ArcId> = Vec::with_capacity(k.saturating_sub(1));

    for i in 1..=k {
        b_bundles.push(Bundle::add(&mut d, &alpha(i), &gamma(i), t)?);
        let mut slots = Vec::with_capacity((a[i - 1] - 1) as usize);
        for j in 1..=(a[i - 1] - 1) as usize {
            let epsilon = if j <= plan.epsilons[i - 1] {
                let v = epsilon_label(i, j);
                Some(Reroute {
                    bundle: Bundle::add(&mut d, &alpha(i - 1), &v, t)?,
                    extra: d.add_arc(&alpha(i - 1), &v)?,
                    single: d.add_arc(&v, &gamma(i))?,
                })
            } else {
                None
            };
            let f = if epsilon.is_some() {
                None
            } else {
                Some(d.add_arc(&alpha(i - 1), &gamma(i))?)
            };
            let delta = if j <= plan.deltas[i - 1] {
                let v = delta_label(i, j);
                Some(Reroute {
                    bundle: Bundle::add(&mut d, &gamma(i), &v, t)?,
                    extra: d.add_arc(&gamma(i), &v)?,
                    single: d.add_arc(&v, &alpha(i - 1))?,
                })
            } else {
                None
            };
            let g = if delta.is_some() {
                None
            } else {
                Some(d.add_arc(&gamma(i), &alpha(i - 1))?)
            };
            slots.push(CSlot { f, g, delta, epsilon });
        }
        c_slots.push(slots);
        p_arcs.push(d.add_arc(&alpha(i), &alpha(i - 1))?);
        if i < k {
            q_arcs.push(d.add_arc(&gamma(i), &gamma(i + 1))?);
        }
    }
    let x_arc: Result<ArcId, Reroute> = if plan.eps10 {
        let v = epsilon_label(1, 0);
        Err(Reroute {
            bundle: Bundle::add(&mut d, &alpha(0), &v, t)?,
            extra: d.add_arc(&alpha(0), &v)?,
            single: d.add_arc(&v, &gamma(1))?,
        })
    } else {
        Ok(d.add_arc(&alpha(0), &gamma(1))?)
    };
    let y_arc = d.add_arc(&gamma(k), &alpha(k))?;

    // Rotation blocks.  The u-side of `C_i` (at α_{i−1}) lists slots in
    // descending order, the v-side (at γ_i) in ascending order, matching the
    // nesting of a plain bundle.
    let c_u_side = |slots: &[CSlot]| -> Vec<End> {
        let mut ends = Vec::new();
        for slot in slots.iter().rev() {
            match (&slot.epsilon, &slot.delta) {
                (Some(eps), Some(del)) => {
                    ends.extend(eps.bundle.u_side());
                    ends.push(End { arc: eps.extra, dir: Dir::Out });
                    ends.push(End { arc: del.single, dir: Dir::In });
                }
                (None, Some(del)) => {
                    ends.push(End { arc: slot.f.unwrap(), dir: Dir::Out });
                    ends.push(End { arc: del.single, dir: Dir::In });
                }
                (None, None) => {
                    ends.push(End { arc: slot.f.unwrap(), dir: Dir::Out });
                    ends.push(End { arc: slot.g.unwrap(), dir: Dir::In });
                }
                (Some(_), None) => unreachable!("forward reroute without backward reroute"),
            }
        }
        ends
    };
    let c_v_side = |slots: &[CSlot]| -> Vec<End> {
        let mut ends = Vec::new();
        for slot in slots.iter() {
            match &slot.delta {
                Some(del) => {
                    ends.extend(del.bundle.u_side());
                    ends.push(End { arc: del.extra, dir: Dir::Out });
                }
                None => ends.push(End { arc: slot.g.unwrap(), dir: Dir::Out }),
            }
            match &slot.epsilon {
                Some(eps) => ends.push(End { arc: eps.single, dir: Dir::In }),
                None => ends.push(End { arc: slot.f.unwrap(), dir: Dir::In }),
            }
        }
        ends
    };

    let mut rotations: BTreeMap<String, Vec<End>> = BTreeMap::new();

    // α_k
    let mut ends = b_bundles[k - 1].u_side();
    ends.push(End { arc: p_arcs[k - 1], dir: Dir::Out });
    ends.push(End { arc: y_arc, dir: Dir::In });
    rotations.insert(alpha(k), ends);

    // middle α_i, 1 ≤ i ≤ k−1
    for i in 1..k {
        let mut ends = vec![End { arc: p_arcs[i], dir: Dir::In }];
        ends.extend(c_u_side(&c_slots[i]));
        ends.extend(b_bundles[i - 1].u_side());
        ends.push(End { arc: p_arcs[i - 1], dir: Dir::Out });
        rotations.insert(alpha(i), ends);
    }

    // α_0
    let mut ends = c_u_side(&c_slots[0]);
    match &x_arc {
        Ok(x) => ends.push(End { arc: *x, dir: Dir::Out }),
        Err(re) => {
            ends.extend(re.bundle.u_side());
            ends.push(End { arc: re.extra, dir: Dir::Out });
        }
    }
    ends.push(End { arc: p_arcs[0], dir: Dir::In });
    rotations.insert(alpha(0), ends);

    // γ_i
    for i in 1..=k {
        let mut ends = if i == k {
            vec![End { arc: y_arc, dir: Dir::Out }]
        } else {
            vec![End { arc: q_arcs[i - 1], dir: Dir::Out }]
        };
        if i == 1 {
            match &x_arc {
                Ok(x) => ends.push(End { arc: *x, dir: Dir::In }),
                Err(re) => ends.push(End { arc: re.single, dir: Dir::In }),
            }
        } else {
            ends.push(End { arc: q_arcs[i - 2], dir: Dir::In });
        }
        ends.extend(c_v_side(&c_slots[i - 1]));
        ends.extend(b_bundles[i - 1].v_side());
        rotations.insert(gamma(i), ends);
    }

    // Fresh reroute vertices: arrive on the extra arc, spiral through the
    // bundle, and leave on the single onward arc.
    let reroute_rotation = |re: &Reroute| -> Vec<End> {
        let mut ends = vec![End { arc: re.extra, dir: Dir::In }];
        ends.extend(re.bundle.v_side());
        ends.push(End { arc: re.single, dir: Dir::Out });
        ends
    };
    for i in 1..=k {
        for (j, slot) in c_slots[i - 1].iter().enumerate() {
            if let Some(del) = &slot.delta {
                rotations.insert(delta_label(i, j + 1), reroute_rotation(del));
            }
            if let Some(eps) = &slot.epsilon {
                rotations.insert(epsilon_label(i, j + 1), reroute_rotation(eps));
            }
        }
    }
    if let Err(re) = &x_arc {
        rotations.insert(epsilon_label(1, 0), reroute_rotation(re));
    }

    Ok(EmbeddedDigraph::new(d, rotations)?)
}

/// Builds the chain realising `⊕ᵢ Z/(m·aᵢ)`.
///
/// Requires `m ≥ 2` and a nonempty list of multipliers, each `aᵢ ≥ 2`.
pub fn build_composites(m: u64, a: &[u64]) -> Result<FamilyInstance, FamilyError> {
    if m < 2 {
        return Err(FamilyError::InvalidParameter {
            name: "m",
            value: m.to_string(),
            requirement: "the common factor must be at least 2",
        });
    }
    if a.is_empty() {
        return Err(FamilyError::InvalidParameter {
            name: "a",
            value: "[]".to_string(),
            requirement: "at least one multiplier is needed",
        });
    }
    if let Some(bad) = a.iter().find(|&&ai| ai < 2) {
        return Err(FamilyError::InvalidParameter {
            name: "a",
            value: bad.to_string(),
            requirement: "every multiplier must be at least 2",
        });
    }
    let embedding = build_chain(m, a, &RewirePlan::none(a.len()))?;
    let group = group_from_cyclic_orders(a.iter().map(|&ai| BigInt::from(m * ai)))?;
    Ok(FamilyInstance::new(format!("composites m={m} a={a:?}"), embedding, group))
}
