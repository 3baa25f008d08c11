//! The cone of continuous functions dominating an element of the ground
//! lattice, with its arithmetic, band projections and decompositions.

mod decompose;
mod report;

pub use decompose::{
    fin_inf_decompose, infinity_test, pos_product, riesz_decompose, truncation_check, Decomposition, InfinityReport,
    TruncDatum, TruncationReport,
};
pub use report::Report;

use std::fmt;
use std::str::FromStr;

use crate::error::{Certificate, Error, Result};
use crate::extreal::{xr_min, ExtReal};
use crate::func::{
    classify, find_point, fn_add, fn_join, fn_le, fn_meet, fn_neg, fn_restrict, fn_scalar, Leaf, Node, Seq, Tail,
    TreeFn,
};
use crate::stone::{Cell, ClopenSet};

/// The ground lattice `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    /// Finite, bounded functions.
    Bounded,
    /// Functions finite off finitely many branch points.
    Full,
}

impl Model {
    pub fn contains(self, u: &TreeFn) -> bool {
        let c = classify(u);
        match self {
            Model::Bounded => c.in_ck,
            Model::Full => c.in_cinfty,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Model::Bounded => "bounded",
            Model::Full => "full",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "bounded" => Ok(Model::Bounded),
            "full" => Ok(Model::Full),
            _ => Err(format!("unknown model {s:?}, expected bounded or full")),
        }
    }
}

/// A cone element together with a witness `f` in `X` with `f <= u`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SupElement {
    u: TreeFn,
    witness: TreeFn,
    model: Model,
}

impl SupElement {
    /// Checks the witness and builds the element.
    pub fn new(u: TreeFn, witness: TreeFn, model: Model) -> Result<Self> {
        if !model.contains(&witness) {
            return Err(Error::InvalidWitness(format!("{witness} is not in the {model} ground lattice")));
        }
        if let Some(p) = find_point(&witness, &u, |f, v| f > v) {
            return Err(Error::InvalidWitness(format!("{witness} exceeds {u} at {p}")));
        }
        Ok(SupElement { u, witness, model })
    }

    /// Builds the element with the witness found by [`member`].
    pub fn from_fn(u: TreeFn, model: Model) -> Result<Self> {
        let witness = member(&u, model)?;
        Ok(SupElement { u, witness, model })
    }

    pub fn u(&self) -> &TreeFn {
        &self.u
    }

    pub fn witness(&self) -> &TreeFn {
        &self.witness
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn into_fn(self) -> TreeFn {
        self.u
    }

    pub fn zero(model: Model) -> Self {
        SupElement { u: TreeFn::zero(), witness: TreeFn::zero(), model }
    }

    /// The constant `+inf`, the greatest element.
    pub fn top(model: Model) -> Self {
        SupElement { u: TreeFn::constant(ExtReal::PosInf), witness: TreeFn::zero(), model }
    }
}

impl fmt::Display for SupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.u.fmt(f)
    }
}

fn neg_inf_cell(u: &TreeFn) -> Option<Cell> {
    classify(u).neg_inf_interior.cells().first().cloned()
}

/// A witness `f` in `X` with `f <= u`, or a certificate that none exists.
///
/// Bounded model: `u` must be bounded below; the witness is the constant
/// minimum of its finite values. Full model: `u` must not be `-inf` on a cell;
/// the witness is `u` with its `+inf` cells replaced by `0`.
pub fn member(u: &TreeFn, model: Model) -> Result<TreeFn> {
    if let Some(c) = neg_inf_cell(u) {
        return Err(Error::NotInCone(Certificate::Cell(c)));
    }
    match model {
        Model::Bounded => {
            if let Some((p, _)) = u.singular_points().into_iter().find(|(_, v)| *v == ExtReal::NegInf) {
                return Err(Error::NotInCone(Certificate::Branch(p)));
            }
            let mut low: Option<ExtReal> = None;
            for (_, leaf) in u.leaves() {
                let v = match leaf {
                    Leaf::Const(v) => v.clone(),
                    Leaf::Ramp(r) => r.seq().inf_from(0),
                };
                if v.is_finite() {
                    low = Some(match low {
                        Some(l) => xr_min(&l, &v),
                        None => v,
                    });
                }
            }
            Ok(TreeFn::constant(low.unwrap_or_else(ExtReal::zero)))
        }
        Model::Full => {
            let cap = |v: &ExtReal| if *v == ExtReal::PosInf { ExtReal::zero() } else { v.clone() };
            Ok(u.map_leaves(&|l| match l {
                Leaf::Const(v) => Node::constant(cap(v)),
                Leaf::Ramp(r) => {
                    let prefix = r.seq().prefix().iter().map(cap).collect();
                    Node::ramp(r.dir(), Seq::new(prefix, r.seq().tail().clone()))
                }
            }))
        }
    }
}

pub(crate) fn same_model(a: &SupElement, b: &SupElement) -> Result<Model> {
    if a.model != b.model {
        return Err(Error::ModelMismatch);
    }
    Ok(a.model)
}

pub fn cone_add(a: &SupElement, b: &SupElement) -> Result<SupElement> {
    let model = same_model(a, b)?;
    let u = fn_add(&a.u, &b.u)?;
    let witness = fn_add(&a.witness, &b.witness).expect("witnesses are finite on a dense set");
    Ok(SupElement::new(u, witness, model).expect("sum of witnesses lies below the sum"))
}

pub fn cone_meet(a: &SupElement, b: &SupElement) -> Result<SupElement> {
    let model = same_model(a, b)?;
    Ok(SupElement { u: fn_meet(&a.u, &b.u), witness: fn_meet(&a.witness, &b.witness), model })
}

pub fn cone_join(a: &SupElement, b: &SupElement) -> Result<SupElement> {
    let model = same_model(a, b)?;
    Ok(SupElement { u: fn_join(&a.u, &b.u), witness: a.witness.clone(), model })
}

pub fn cone_sup(family: &[SupElement]) -> Result<SupElement> {
    let (first, rest) = family.split_first().ok_or(Error::EmptyFamily)?;
    rest.iter().try_fold(first.clone(), |acc, x| cone_join(&acc, x))
}

/// `λ·a` for finite `λ >= 0`; the witness is scaled along.
pub fn cone_scalar(lambda: &ExtReal, a: &SupElement) -> Result<SupElement> {
    Ok(SupElement { u: fn_scalar(lambda, &a.u)?, witness: fn_scalar(lambda, &a.witness)?, model: a.model })
}

/// Infimum of a finite family bounded below by `lower`.
pub fn cone_inf(family: &[SupElement], lower: &SupElement) -> Result<SupElement> {
    let (first, rest) = family.split_first().ok_or(Error::EmptyFamily)?;
    for x in family {
        same_model(x, lower)?;
        if let Some(p) = find_point(&lower.u, &x.u, |l, v| l > v) {
            return Err(Error::NoLowerBound(format!("{} exceeds {} at {p}", lower.u, x.u)));
        }
    }
    let u = rest.iter().fold(first.u.clone(), |acc, x| fn_meet(&acc, &x.u));
    Ok(SupElement { u, witness: lower.witness.clone(), model: lower.model })
}

/// `-a` in the cone, which exists exactly when `a` lies in `X`.
pub fn cone_inverse(a: &SupElement) -> Result<SupElement> {
    let n = fn_neg(&a.u)?;
    let b = SupElement::from_fn(n, a.model)?;
    debug_assert_eq!(fn_add(&a.u, &b.u).ok(), Some(TreeFn::zero()));
    Ok(b)
}

/// An increasing family `f_1 <= ... <= f_m` in `X` below `u` whose supremum is
/// `u` truncated at `height`; `{u}` when `u` is already in `X`.
pub fn order_dense_witness(a: &SupElement, height: i64) -> Vec<TreeFn> {
    if a.model.contains(&a.u) {
        return vec![a.u.clone()];
    }
    (1..=height.max(1)).map(|n| fn_meet(&a.u, &TreeFn::constant(ExtReal::int(n)))).collect()
}

/// `P_U u`: `u` on `U`, `0` off `U`.
pub fn band_project(set: &ClopenSet, u: &TreeFn) -> TreeFn {
    fn_restrict(u, set)
}

/// Projection of a cone element; the witness is projected along.
pub fn band_project_elem(set: &ClopenSet, a: &SupElement) -> SupElement {
    SupElement { u: fn_restrict(&a.u, set), witness: fn_restrict(&a.witness, set), model: a.model }
}

/// Closure of `{a != 0}` as a clopen set.
pub fn support_closure(a: &TreeFn) -> ClopenSet {
    let mut cells = Vec::new();
    for (cell, leaf) in a.leaves() {
        match leaf {
            Leaf::Const(v) => {
                if !v.is_zero() {
                    cells.push(cell);
                }
            }
            Leaf::Ramp(r) => {
                let (dir, s) = (r.dir(), r.seq());
                let tail_from = match s.tail() {
                    Tail::Poly(q) if q.is_zero() => None,
                    Tail::Poly(q) => Some(s.start().max(q.crossover())),
                    _ => Some(s.start()),
                };
                let scan_to = tail_from.unwrap_or(s.start());
                for k in 0..scan_to {
                    if !s.value(k).is_zero() {
                        cells.push(cell.extend(dir, k).child(!dir));
                    }
                }
                if let Some(n) = tail_from {
                    cells.push(cell.extend(dir, n));
                }
            }
        }
    }
    ClopenSet::normalize(cells)
}

/// `P_a x`: projection onto the band generated by `a`.
pub fn principal_band_project(a: &TreeFn, x: &TreeFn) -> TreeFn {
    band_project(&support_closure(a), x)
}

/// `0 <= u`, or the first point where `u` is negative.
pub(crate) fn check_positive(u: &TreeFn) -> Result<()> {
    match find_point(&TreeFn::zero(), u, |z, v| z > v) {
        Some(p) => Err(Error::NotPositive(p)),
        None => Ok(()),
    }
}

pub fn is_positive(u: &TreeFn) -> bool {
    fn_le(&TreeFn::zero(), u)
}
