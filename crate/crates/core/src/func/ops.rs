use num_traits::Signed;

use crate::error::{Error, Result};
use crate::extreal::ExtReal;
use crate::stone::{Cell, ClopenSet};

use super::seq::BinOp;
use super::tree::{pair_fold, AlignedCell, Leaf, Node, TreeFn};

fn zip(u: &TreeFn, v: &TreeFn, op: BinOp) -> Result<TreeFn> {
    let root = pair_fold(
        u.root(),
        v.root(),
        &Cell::root(),
        &mut |ac: AlignedCell| {
            let (dir, s, t) = ac.seqs();
            let combined = s.zip(&t, op).map_err(|(k, e)| match e {
                Error::UndefinedSum => {
                    let at = if ac.dir().is_some() { ac.cell.extend(dir, k).child(!dir) } else { ac.cell.clone() };
                    Error::SumUndefined(at)
                }
                e => e,
            })?;
            Ok(match ac.dir() {
                None => Node::constant(combined.value(0)),
                Some(d) => Node::ramp(d, combined),
            })
        },
        &Node::split,
    )?;
    Ok(TreeFn::from_node(root))
}

/// Sum on the dense set where both summands exceed `-inf`, extended
/// continuously to all of `K`.
///
/// The dense set is `K` minus finitely many branch points exactly when
/// neither summand is `-inf` on a whole cell; otherwise the sum is undefined.
/// At branch points the value is the limit of the summed ramp sequences, so
/// `-k` plus `2k` has branch value `+inf` even though the individual limits
/// conflict.
pub fn fn_add(u1: &TreeFn, u2: &TreeFn) -> Result<TreeFn> {
    for u in [u1, u2] {
        if let Some(c) = classify(u).neg_inf_interior.cells().first() {
            return Err(Error::SumUndefined(c.clone()));
        }
    }
    zip(u1, u2, BinOp::Add)
}

/// Scalar multiple by a finite `λ >= 0`, leafwise with `0 · inf = 0`.
pub fn fn_scalar(lambda: &ExtReal, u: &TreeFn) -> Result<TreeFn> {
    let s = match lambda {
        ExtReal::Finite(q) if !q.is_negative() => q.clone(),
        _ => return Err(Error::NegativeScalar(lambda.to_string())),
    };
    Ok(u.map_leaves(&|l| match l {
        Leaf::Const(v) => Node::constant(crate::extreal::xr_mul(lambda, v)),
        Leaf::Ramp(r) => Node::ramp(r.dir(), r.seq().map_scale(&s)),
    }))
}

/// Additive inverse, defined only for functions finite almost everywhere.
pub fn fn_neg(u: &TreeFn) -> Result<TreeFn> {
    let c = classify(u);
    if let Some(cell) = c.pos_inf_interior.join(&c.neg_inf_interior).cells().first() {
        return Err(Error::NotNegatable(cell.clone()));
    }
    Ok(u.map_leaves(&|l| match l {
        Leaf::Const(v) => Node::constant(v.neg()),
        Leaf::Ramp(r) => Node::ramp(r.dir(), r.seq().neg()),
    }))
}

/// `u - v`, i.e. `u + (-v)`; requires `v` finite almost everywhere.
pub fn fn_sub(u: &TreeFn, v: &TreeFn) -> Result<TreeFn> {
    fn_add(u, &fn_neg(v)?)
}

pub fn fn_meet(u: &TreeFn, v: &TreeFn) -> TreeFn {
    zip(u, v, BinOp::Min).expect("min is total")
}

pub fn fn_join(u: &TreeFn, v: &TreeFn) -> TreeFn {
    zip(u, v, BinOp::Max).expect("max is total")
}

/// Pointwise product with `0 · inf = 0`; at branch points the limit of the
/// multiplied sequences.
pub fn fn_mul(u: &TreeFn, v: &TreeFn) -> TreeFn {
    zip(u, v, BinOp::Mul).expect("product is total")
}

/// Supremum of a finite non-empty family.
pub fn fn_sup(family: &[TreeFn]) -> Result<TreeFn> {
    let (first, rest) = family.split_first().ok_or(Error::EmptyFamily)?;
    Ok(rest.iter().fold(first.clone(), |acc, f| fn_join(&acc, f)))
}

/// Infimum of a finite non-empty family.
pub fn fn_inf(family: &[TreeFn]) -> Result<TreeFn> {
    let (first, rest) = family.split_first().ok_or(Error::EmptyFamily)?;
    Ok(rest.iter().fold(first.clone(), |acc, f| fn_meet(&acc, f)))
}

/// `u⁺ = u ∨ 0`.
pub fn fn_pos(u: &TreeFn) -> TreeFn {
    fn_join(u, &TreeFn::zero())
}

/// `u` on `set`, zero elsewhere.
pub fn fn_restrict(u: &TreeFn, set: &ClopenSet) -> TreeFn {
    fn go(node: &Node, cell: &Cell, set: &ClopenSet) -> Node {
        if set.contains_cell(cell) {
            return node.clone();
        }
        if !set.cells().iter().any(|c| cell.is_prefix_of(c)) {
            return Node::constant(ExtReal::zero());
        }
        let (a, b) = match node {
            Node::Split(a, b) => ((**a).clone(), (**b).clone()),
            Node::Leaf(l) => l.children(),
        };
        Node::split(go(&a, &cell.child(false), set), go(&b, &cell.child(true), set))
    }
    TreeFn::from_node(go(u.root(), &Cell::root(), set))
}

/// `on` on `set`, `off` elsewhere.
pub fn fn_indicator(set: &ClopenSet, on: ExtReal, off: ExtReal) -> TreeFn {
    fn go(cell: &Cell, set: &ClopenSet, on: &ExtReal, off: &ExtReal) -> Node {
        if set.contains_cell(cell) {
            Node::constant(on.clone())
        } else if !set.cells().iter().any(|c| cell.is_prefix_of(c)) {
            Node::constant(off.clone())
        } else {
            Node::split(go(&cell.child(false), set, on, off), go(&cell.child(true), set, on, off))
        }
    }
    TreeFn::from_node(go(&Cell::root(), set, &on, &off))
}

/// Membership data for the ground lattices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// Bounded, i.e. in `C(K)`.
    pub in_ck: bool,
    /// Finite off a nowhere dense set, i.e. in `C^∞(K)`.
    pub in_cinfty: bool,
    pub neg_inf_interior_empty: bool,
    /// Union of the cells on which the function is identically `+inf`.
    pub pos_inf_interior: ClopenSet,
    /// Union of the cells on which the function is identically `-inf`.
    pub neg_inf_interior: ClopenSet,
}

pub fn classify(u: &TreeFn) -> Classification {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut ramps = false;
    for (cell, leaf) in u.leaves() {
        let mut note = |v: &ExtReal, c: Cell| match v {
            ExtReal::PosInf => pos.push(c),
            ExtReal::NegInf => neg.push(c),
            ExtReal::Finite(_) => {}
        };
        match leaf {
            Leaf::Const(v) => note(v, cell),
            Leaf::Ramp(r) => {
                ramps = true;
                for (k, v) in r.seq().prefix().iter().enumerate() {
                    note(v, cell.extend(r.dir(), k).child(!r.dir()));
                }
            }
        }
    }
    let pos_inf_interior = ClopenSet::normalize(pos);
    let neg_inf_interior = ClopenSet::normalize(neg);
    let in_cinfty = pos_inf_interior.is_empty() && neg_inf_interior.is_empty();
    Classification {
        // canonical ramps are singular, hence unbounded
        in_ck: in_cinfty && !ramps,
        in_cinfty,
        neg_inf_interior_empty: neg_inf_interior.is_empty(),
        pos_inf_interior,
        neg_inf_interior,
    }
}
