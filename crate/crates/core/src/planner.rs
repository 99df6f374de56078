//! Certified order raising: a replayable sequence of moves that removes
//! every top-order point of a model whose intersection invariant vanishes.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{off_spine_edge, RelatorLattice};
use crate::tree::{canonical_form, CanonicalTree, DecoratedTree, EdgeId, EdgePath, PuncturedTree, Sign};
use crate::tower::{IhxSite, ModelPoint, TowerModel};
use crate::Bounds;

/// One step of a certificate. Point identifiers refer to the model the
/// step is applied to; edge paths are relative to the point's puncture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// Adds the points `sign * (I - H + X)`.
    IhxInsert { site: IhxSite, sign: Sign },
    /// Replaces a point `eps * I` by `eps * H` and `-eps * X`.
    IhxSplit { point: u64, edge: EdgePath },
    PunctureMove { point: u64, edge: EdgePath },
    CancelPair { p: u64, q: u64 },
}

/// Moves raising a model of order `order` to order `order + 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MoveCertificate {
    pub order: usize,
    pub moves: Vec<Move>,
}

pub fn apply_move(model: &TowerModel, mv: &Move) -> Result<TowerModel> {
    match mv {
        Move::IhxInsert { site, sign } => model.ihx_insert(site, *sign),
        Move::IhxSplit { point, edge } => model.ihx_split(*point, edge),
        Move::PunctureMove { point, edge } => model.move_puncture_to(*point, edge),
        Move::CancelPair { p, q } => model.cancel_simple_pair(*p, *q),
    }
}

const MAX_ROUNDS: usize = 10_000;

/// Edge of `q` matching edge `e` of `p` under an isomorphism of the
/// underlying trees; orientation-reversing when `reverse`.
fn matching_edge(p: &DecoratedTree, q: &DecoratedTree, e: EdgeId, reverse: bool) -> Result<EdgeId> {
    let fp = canonical_form(p);
    let fq = canonical_form(q);
    let mut eq = fq.inverse_map()[fp.edge_map[e]];
    if reverse {
        let odd = fq.odd_automorphism.as_ref().ok_or_else(|| Error::Precondition("no odd automorphism".into()))?;
        eq = odd[eq];
    }
    Ok(eq)
}

/// The sign of a point against its tree's canonical representative,
/// before two-torsion normalization.
fn raw_sign(p: &ModelPoint) -> Sign {
    p.tree().sign() * canonical_form(p.tree().tree()).sign
}

/// Pairs top-order points with equal canonical trees and cancelling signs.
fn pair_points(model: &TowerModel) -> Result<Vec<(u64, u64)>> {
    let mut groups: BTreeMap<&CanonicalTree, (Vec<u64>, Vec<u64>)> = BTreeMap::new();
    for p in model.top_points() {
        let g = groups.entry(p.canonical()).or_default();
        if p.canonical().two_torsion() || p.term_sign() == Sign::Plus {
            g.0.push(p.id());
        } else {
            g.1.push(p.id());
        }
    }
    let mut pairs = Vec::new();
    for (t, (plus, minus)) in groups {
        if t.two_torsion() {
            if plus.len() % 2 != 0 {
                return Err(Error::Precondition(format!("odd number of points on {t}")));
            }
            pairs.extend(plus.chunks(2).map(|c| (c[0], c[1])));
        } else {
            if plus.len() != minus.len() {
                return Err(Error::Precondition(format!("points on {t} do not cancel")));
            }
            pairs.extend(plus.into_iter().zip(minus));
        }
    }
    Ok(pairs)
}

/// A certificate raising the order of `model`, or the nonzero normal form
/// of its invariant.
pub fn certify_raise_order(model: &TowerModel, bounds: &Bounds) -> Result<MoveCertificate> {
    if model.alphabet() != 0 || model.points().iter().any(|p| !p.tree().tree().is_trivially_decorated()) {
        return Err(Error::Decorated);
    }
    let n = model.declared_order();
    let mut cert = MoveCertificate { order: n, moves: Vec::new() };
    let mut state = model.clone();
    let tau = state.tau();
    let mut lattice = RelatorLattice::for_sum(&tau, bounds)?;
    lattice.cover(&tau)?;
    let nf = lattice.normal_form(&tau)?;
    if !nf.is_empty() {
        return Err(Error::ObstructionNonzero(nf));
    }
    let uses = lattice.decompose(&tau)?.ok_or_else(|| Error::Precondition("invariant has no decomposition".into()))?;
    let mut emit = |state: &mut TowerModel, mv: Move| -> Result<()> {
        *state = apply_move(state, &mv)?;
        cert.moves.push(mv);
        Ok(())
    };
    for u in uses {
        let (a, b, g) = u.relator.base.split_form();
        let tree = PuncturedTree::from_split(Sign::Plus, &a, &b, &g);
        let edge = tree.path_of(u.relator.edge)?;
        let site = IhxSite { tree, edge };
        let sign = if u.coefficient > 0 { Sign::Minus } else { Sign::Plus };
        for _ in 0..u.coefficient.unsigned_abs() {
            emit(&mut state, Move::IhxInsert { site: site.clone(), sign })?;
        }
    }
    for _ in 0..MAX_ROUNDS {
        let pairs = pair_points(&state)?;
        if pairs.is_empty() {
            return Ok(cert);
        }
        for (p, q) in pairs {
            let (pp, qp) = (state.point(p)?.clone(), state.point(q)?.clone());
            match off_spine_edge(pp.tree().tree()) {
                Some(e) => {
                    let reverse = raw_sign(&pp) == raw_sign(&qp);
                    let eq = matching_edge(pp.tree().tree(), qp.tree().tree(), e, reverse)?;
                    let ep = pp.tree().path_of(e)?;
                    let eq = qp.tree().path_of(eq)?;
                    emit(&mut state, Move::IhxSplit { point: p, edge: ep })?;
                    emit(&mut state, Move::IhxSplit { point: q, edge: eq })?;
                }
                None => emit(&mut state, Move::CancelPair { p, q })?,
            }
        }
    }
    Err(Error::Precondition("planner did not terminate".into()))
}

/// Replays a certificate, checking that every move preserves the vanishing
/// of the invariant and every puncture move preserves it exactly. Returns
/// the raised model.
pub fn replay_certificate(model: &TowerModel, cert: &MoveCertificate, bounds: &Bounds) -> Result<TowerModel> {
    if cert.order != model.declared_order() {
        return Err(Error::Precondition(format!(
            "certificate for order {} applied to an order-{} model",
            cert.order,
            model.declared_order()
        )));
    }
    let zero = model.tau_is_zero(bounds)?;
    let mut state = model.clone();
    for (i, mv) in cert.moves.iter().enumerate() {
        let next = apply_move(&state, mv).map_err(|e| Error::Precondition(format!("move {i}: {e}")))?;
        if matches!(mv, Move::PunctureMove { .. }) && next.tau() != state.tau() {
            return Err(Error::Precondition(format!("move {i} changed the invariant")));
        }
        if next.tau_is_zero(bounds)? != zero {
            return Err(Error::Precondition(format!("move {i} changed whether the invariant vanishes")));
        }
        state = next;
    }
    state.raise_order()
}

/// Whether a certificate replays and leaves no top-order points.
pub fn verify_certificate(model: &TowerModel, cert: &MoveCertificate, bounds: &Bounds) -> bool {
    replay_certificate(model, cert, bounds).is_ok()
}

/// The reason a certificate fails, if it does.
pub fn certificate_failure(model: &TowerModel, cert: &MoveCertificate, bounds: &Bounds) -> Option<String> {
    replay_certificate(model, cert, bounds).err().map(|e| format!("{e}"))
}
