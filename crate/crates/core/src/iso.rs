//! A second, flat encoding of ramp-free functions and the canonical map `J`
//! between the flat and tree encodings.

use std::fmt;

use crate::error::{Error, Result};
use crate::extreal::{xr_add, xr_max, xr_min, xr_mul, ExtReal};
use crate::func::{fn_le, fn_meet, fn_sup, TreeFn};
use crate::stone::Cell;
use crate::supcomp::Model;

/// A locally constant function given by its values on the `2^depth` cells of
/// one depth, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlatFn {
    depth: usize,
    values: Vec<ExtReal>,
}

impl FlatFn {
    pub fn new(depth: usize, values: Vec<ExtReal>) -> Result<Self> {
        if depth >= usize::BITS as usize || values.len() != 1usize << depth {
            return Err(Error::NotRepresentable(format!(
                "flat function of depth {depth} needs 2^{depth} values, got {}",
                values.len()
            )));
        }
        Ok(FlatFn { depth, values })
    }

    pub fn constant(depth: usize, v: ExtReal) -> Self {
        FlatFn { depth, values: vec![v; 1 << depth] }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn values(&self) -> &[ExtReal] {
        &self.values
    }

    /// Value on a cell of depth at least `self.depth`.
    pub fn value_on(&self, cell: &Cell) -> &ExtReal {
        let idx = cell.word()[..self.depth].iter().fold(0usize, |acc, &b| acc * 2 + b as usize);
        &self.values[idx]
    }

    /// The same function at a finer depth.
    pub fn refine(&self, depth: usize) -> FlatFn {
        assert!(depth >= self.depth);
        let values = Cell::all_at_depth(depth).map(|c| self.value_on(&c).clone()).collect();
        FlatFn { depth, values }
    }

    fn zip_with(&self, other: &FlatFn, f: impl Fn(&ExtReal, &ExtReal) -> Result<ExtReal>) -> Result<FlatFn> {
        let d = self.depth.max(other.depth);
        let values =
            Cell::all_at_depth(d).map(|c| f(self.value_on(&c), other.value_on(&c))).collect::<Result<Vec<_>>>()?;
        Ok(FlatFn { depth: d, values })
    }

    /// Cellwise sum; fails on a cell where `+inf` meets `-inf`.
    pub fn add(&self, other: &FlatFn) -> Result<FlatFn> {
        self.zip_with(other, xr_add)
    }

    pub fn meet(&self, other: &FlatFn) -> FlatFn {
        self.zip_with(other, |a, b| Ok(xr_min(a, b))).expect("min is total")
    }

    pub fn join(&self, other: &FlatFn) -> FlatFn {
        self.zip_with(other, |a, b| Ok(xr_max(a, b))).expect("max is total")
    }

    pub fn scale(&self, lambda: &ExtReal) -> FlatFn {
        FlatFn { depth: self.depth, values: self.values.iter().map(|v| xr_mul(lambda, v)).collect() }
    }

    pub fn le(&self, other: &FlatFn) -> bool {
        let d = self.depth.max(other.depth);
        Cell::all_at_depth(d).all(|c| self.value_on(&c) <= other.value_on(&c))
    }

    /// Finite on every cell.
    pub fn is_finite(&self) -> bool {
        self.values.iter().all(ExtReal::is_finite)
    }
}

impl fmt::Display for FlatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "flat d={} [", self.depth)?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JDirection {
    FlatToTree,
    TreeToFlat { depth: usize },
}

/// The canonical map between the two encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JMap {
    pub direction: JDirection,
}

impl JMap {
    /// The inverse direction; `depth` is the target depth when inverting
    /// flat-to-tree.
    pub fn inverse(self, depth: usize) -> JMap {
        match self.direction {
            JDirection::FlatToTree => JMap { direction: JDirection::TreeToFlat { depth } },
            JDirection::TreeToFlat { .. } => JMap { direction: JDirection::FlatToTree },
        }
    }
}

pub fn j_transport(u: &FlatFn) -> TreeFn {
    fn build(values: &[ExtReal]) -> TreeFn {
        if values.len() == 1 {
            return TreeFn::constant(values[0].clone());
        }
        let (a, b) = values.split_at(values.len() / 2);
        TreeFn::split(build(a), build(b))
    }
    build(&u.values)
}

pub fn j_inverse(u: &TreeFn, depth: usize) -> Result<FlatFn> {
    if u.has_ramps() {
        return Err(Error::NotRepresentable(format!("{u} has ramps")));
    }
    if u.depth() > depth {
        return Err(Error::NotRepresentable(format!("{u} is deeper than {depth}")));
    }
    let values = Cell::all_at_depth(depth).map(|c| u.eval_cell(&c)).collect::<Result<Vec<_>>>()?;
    Ok(FlatFn { depth, values })
}

/// Outcome of comparing `J(u)` with `sup { x in X : x <= u }` over a budgeted
/// family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JFormulaCheck {
    pub holds: bool,
    /// A cell where the family supremum disagrees with `J(u)`.
    pub separating: Option<Cell>,
    /// Size of the family that was used.
    pub family_size: usize,
}

/// The grid element of height `n`: finite values kept, `+inf` replaced by `n`.
fn grid_element(u: &FlatFn, n: i64) -> FlatFn {
    let values = u.values.iter().map(|v| if *v == ExtReal::PosInf { ExtReal::int(n) } else { v.clone() }).collect();
    FlatFn { depth: u.depth, values }
}

/// Checks the defining formula of `J` on `u` with grid heights `1..=height`.
///
/// The family is `{ J(u) ∧ g }` for grid elements `g <= u` of `X`. Its
/// supremum must agree with `J(u)` on finite cells and equal the top height on
/// `+inf` cells, the heights increasing without bound as the budget grows.
pub fn j_formula_check(u: &FlatFn, model: Model, height: i64) -> JFormulaCheck {
    let fail = |c: Option<Cell>, n| JFormulaCheck { holds: false, separating: c, family_size: n };
    let ju = j_transport(u);
    if u.values.contains(&ExtReal::NegInf) {
        let c = Cell::all_at_depth(u.depth).find(|c| *u.value_on(c) == ExtReal::NegInf);
        return fail(c, 0);
    }
    if model.contains(&ju) {
        return JFormulaCheck { holds: true, separating: None, family_size: 1 };
    }
    let family: Vec<TreeFn> = (1..=height.max(1))
        .map(|n| j_transport(&grid_element(u, n)))
        .filter(|g| model.contains(g) && fn_le(g, &ju))
        .map(|g| fn_meet(&ju, &g))
        .collect();
    let Ok(sup) = fn_sup(&family) else { return fail(None, 0) };
    let top = height.max(1);
    for c in Cell::all_at_depth(u.depth) {
        let got = sup.eval_cell(&c);
        let want = match u.value_on(&c) {
            ExtReal::PosInf => ExtReal::int(top),
            v => v.clone(),
        };
        if got.as_ref() != Ok(&want) {
            return fail(Some(c), family.len());
        }
    }
    JFormulaCheck { holds: true, separating: None, family_size: family.len() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_tree;

    fn flat(d: usize, vs: &[ExtReal]) -> FlatFn {
        FlatFn::new(d, vs.to_vec()).unwrap()
    }

    #[test]
    fn transport_examples() {
        let u = flat(1, &[ExtReal::int(2), ExtReal::int(5)]);
        assert_eq!(j_transport(&u), parse_tree("split(const 2, const 5)").unwrap());
        let back = j_inverse(&TreeFn::constant(ExtReal::int(3)), 2).unwrap();
        assert_eq!(back.values(), &[ExtReal::int(3), ExtReal::int(3), ExtReal::int(3), ExtReal::int(3)]);
        let r = parse_tree("ramp(1; ; poly[0, 1])").unwrap();
        assert!(matches!(j_inverse(&r, 4), Err(Error::NotRepresentable(_))));
        assert!(matches!(
            j_inverse(&parse_tree("split(const 1, split(const 2, const 3))").unwrap(), 1),
            Err(Error::NotRepresentable(_))
        ));
    }

    #[test]
    fn inverse_round_trip() {
        let u = flat(2, &[ExtReal::int(1), ExtReal::PosInf, ExtReal::int(1), ExtReal::frac(-1, 2)]);
        assert_eq!(j_inverse(&j_transport(&u), 2).unwrap(), u);
        assert_eq!(j_transport(&u.refine(4)), j_transport(&u));
    }

    #[test]
    fn formula_examples() {
        let c4 = FlatFn::constant(0, ExtReal::int(4));
        assert!(j_formula_check(&c4, Model::Bounded, 4).holds);
        let u = flat(1, &[ExtReal::PosInf, ExtReal::int(1)]);
        for n in 1..6 {
            let r = j_formula_check(&u, Model::Bounded, n);
            assert!(r.holds);
            assert_eq!(r.family_size, n as usize);
        }
        let r = j_formula_check(&u, Model::Full, 3);
        assert!(r.holds);
    }

    #[test]
    fn flat_ops() {
        let a = flat(1, &[ExtReal::int(1), ExtReal::PosInf]);
        let b = flat(2, &[ExtReal::int(2), ExtReal::int(3), ExtReal::int(-1), ExtReal::int(0)]);
        let s = a.add(&b).unwrap();
        assert_eq!(s.to_string(), "flat d=2 [3, 4, +inf, +inf]");
        assert!(a.meet(&b).le(&a));
        assert!(b.le(&a.join(&b)));
        assert_eq!(a.scale(&ExtReal::zero()), FlatFn::constant(1, ExtReal::zero()));
        assert!(flat(0, &[ExtReal::PosInf]).add(&flat(0, &[ExtReal::NegInf])).is_err());
    }
}
