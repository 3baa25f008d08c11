use crate::error::{Error, Result};
use crate::extreal::{xr_max, ExtReal};
use crate::func::{
    classify, find_point, fn_add, fn_indicator, fn_le, fn_meet, fn_mul, fn_pos, fn_restrict, fn_scalar, fn_sub, BinOp,
    Leaf, Node, Probe, Seq, TreeFn,
};
use crate::stone::ClopenSet;

use super::{check_positive, cone_add, same_model, support_closure, Report, SupElement};

/// `u = x + w` with `x` finite off a nowhere dense set and `w` taking only the
/// values `0` and `+inf`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub finite_part: TreeFn,
    pub infinite_part: TreeFn,
    /// Closure of `{u < inf}`.
    pub carrier: ClopenSet,
}

impl Decomposition {
    pub fn report(&self) -> Report {
        Report::new()
            .with("finite_part", &self.finite_part)
            .with("infinite_part", &self.infinite_part)
            .with("carrier", &self.carrier)
    }
}

pub fn fin_inf_decompose(a: &SupElement) -> Decomposition {
    let top = classify(a.u()).pos_inf_interior;
    let carrier = top.complement();
    Decomposition {
        finite_part: fn_restrict(a.u(), &carrier),
        infinite_part: fn_indicator(&top, ExtReal::PosInf, ExtReal::zero()),
        carrier,
    }
}

/// `x = y + z` with `y <= u` and `z <= v`, for `v >= 0` and `x <= u + v`.
///
/// `y = x ∧ u`. Off the cells where `y` is `+inf`, `z = x - y`; on them
/// `z = 0`.
pub fn riesz_decompose(x: &SupElement, u: &SupElement, v: &SupElement) -> Result<(SupElement, SupElement)> {
    let model = same_model(x, u)?;
    same_model(x, v)?;
    check_positive(v.u())?;
    let bound = cone_add(u, v)?;
    if let Some(p) = find_point(x.u(), bound.u(), |a, b| a > b) {
        return Err(Error::PreconditionFailed(p));
    }
    let y = fn_meet(x.u(), u.u());
    let finite = classify(&y).pos_inf_interior.complement();
    let z = fn_sub(&fn_restrict(x.u(), &finite), &fn_restrict(&y, &finite)).expect("both parts are finite on the band");
    assert_eq!(fn_add(&y, &z).as_ref(), Ok(x.u()), "x = y + z");
    assert!(fn_le(&y, u.u()) && fn_le(&z, v.u()), "y <= u and z <= v");
    let y = SupElement::new(y, fn_meet(x.witness(), u.witness()), model).expect("meet of witnesses");
    let z = SupElement::new(z, TreeFn::zero(), model).expect("z is positive");
    Ok((y, z))
}

/// One leaf datum of `u` in the truncation certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TruncDatum {
    /// `t_n` equals the finite value for every `n >= from`.
    Stable { at: Probe, value: ExtReal, from: i64 },
    /// `t_n = n` for every `n`.
    Unbounded { at: Probe },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncationReport {
    /// `t_n = n·e ∧ u` for `n = 1..=steps.len()`.
    pub steps: Vec<TreeFn>,
    pub data: Vec<TruncDatum>,
    pub verified: bool,
}

impl TruncationReport {
    pub fn report(&self) -> Report {
        let stable = self.data.iter().filter(|d| matches!(d, TruncDatum::Stable { .. })).count();
        let mut r = Report::new();
        for (i, t) in self.steps.iter().enumerate() {
            r.push(format!("t_{}", i + 1), t);
        }
        r.with("stable_data", stable).with("unbounded_data", self.data.len() - stable).with("verified", self.verified)
    }
}

fn ceil_at_least_one(v: &ExtReal) -> i64 {
    use num_traits::ToPrimitive;
    match v {
        ExtReal::Finite(q) => q.ceil().to_integer().to_i64().expect("value fits in i64").max(1),
        _ => 1,
    }
}

/// The truncations `t_n = n·e ∧ u` and a leafwise proof that `sup_n t_n = u`.
///
/// Every leaf datum of `u` (constants, ramp prefix values, the first tail value
/// and the branch limit) is either finite, in which case `t_n` reaches it from
/// `n = ceil(value)` on, or `+inf`, in which case `t_n = n` there. Ramp tail
/// subcells hold `min(q(k), n)`, which reaches `q(k)` once `n >= q(k)`.
pub fn truncation_check(a: &SupElement) -> Result<TruncationReport> {
    let u = a.u();
    check_positive(u)?;
    let mut data = Vec::new();
    for (cell, leaf) in u.leaves() {
        let mut note = |at: Probe, v: ExtReal| {
            data.push(match v {
                ExtReal::PosInf => TruncDatum::Unbounded { at },
                v => TruncDatum::Stable { at, from: ceil_at_least_one(&v), value: v },
            })
        };
        match leaf {
            Leaf::Const(v) => note(Probe::Cell(cell), v.clone()),
            Leaf::Ramp(r) => {
                let (dir, s) = (r.dir(), r.seq());
                for k in 0..=s.start() {
                    note(Probe::Cell(cell.extend(dir, k).child(!dir)), s.value(k));
                }
                note(Probe::Branch(cell.branch(dir)), r.limit());
            }
        }
    }
    let top = data
        .iter()
        .filter_map(|d| match d {
            TruncDatum::Stable { from, .. } => Some(*from),
            TruncDatum::Unbounded { .. } => None,
        })
        .max()
        .unwrap_or(1)
        + 1;
    let steps: Vec<TreeFn> = (1..=top).map(|n| fn_meet(&TreeFn::constant(ExtReal::int(n)), u)).collect();
    let eval = |t: &TreeFn, p: &Probe| crate::func::eval_at(t, p).expect("probe is resolved");
    let mut verified = steps.iter().zip(1..).all(|(t, n)| *t == truncate_leafwise(u, n));
    for d in &data {
        verified &= match d {
            TruncDatum::Stable { at, value, from } => {
                let t = &steps[(*from - 1) as usize];
                eval(t, at) == *value && eval(&steps[(top - 1) as usize], at) == *value
            }
            TruncDatum::Unbounded { at } => steps.iter().zip(1..).all(|(t, n)| eval(t, at) == ExtReal::int(n)),
        };
    }
    Ok(TruncationReport { steps, data, verified })
}

/// `min(u, n)` computed leaf by leaf, independently of the pairwise walk.
fn truncate_leafwise(u: &TreeFn, n: i64) -> TreeFn {
    let cap = Seq::constant(&ExtReal::int(n));
    u.map_leaves(&|l| match l {
        Leaf::Const(v) => Node::constant(v.clone().min(ExtReal::int(n))),
        Leaf::Ramp(r) => Node::ramp(r.dir(), r.seq().zip(&cap, BinOp::Min).expect("min is total")),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfinityReport {
    /// Lattice infimum of the `v_λ`.
    pub v: TreeFn,
    pub in_xu: bool,
    /// `(λ, v_λ)` with `v_λ = P_{(u - λe)^+} e`.
    pub lambda_trace: Vec<(ExtReal, TreeFn)>,
}

impl InfinityReport {
    pub fn report(&self) -> Report {
        let mut r = Report::new().with("v", &self.v).with("in_Xu", self.in_xu);
        for (lambda, v) in &self.lambda_trace {
            r.push(format!("v_lambda[{lambda}]"), v);
        }
        r
    }
}

/// `v = inf_λ P_{(u - λe)^+} e`, which vanishes exactly when `u` is finite off a
/// nowhere dense set.
///
/// `v_λ` only changes at values `u` takes, so it is evaluated at `0`, at every
/// finite constant and ramp prefix value, and at one `λ` above all of them and
/// above each ramp's first tail value. The decreasing family's lattice
/// infimum is the indicator of the interior of the intersection of the
/// carriers, i.e. of the union of the cells where `u` is `+inf`.
pub fn infinity_test(a: &SupElement) -> Result<InfinityReport> {
    let u = a.u();
    check_positive(u)?;
    let mut lambdas: Vec<ExtReal> = u.leaf_values().into_iter().filter(ExtReal::is_finite).collect();
    lambdas.push(ExtReal::zero());
    let beyond = lambdas.iter().fold(ExtReal::zero(), |m, v| xr_max(&m, v));
    lambdas.push(match beyond {
        ExtReal::Finite(q) => ExtReal::Finite(q + num_rational::BigRational::from_integer(1.into())),
        other => other,
    });
    lambdas.sort();
    lambdas.dedup();
    let e = TreeFn::one();
    let lambda_trace: Vec<(ExtReal, TreeFn)> = lambdas
        .into_iter()
        .map(|lambda| {
            let shifted = fn_sub(u, &fn_scalar(&lambda, &e).expect("λ >= 0")).expect("e is finite");
            let carrier = support_closure(&fn_pos(&shifted));
            (lambda, fn_restrict(&e, &carrier))
        })
        .collect();
    let top = classify(u).pos_inf_interior;
    let v = fn_indicator(&top, ExtReal::one(), ExtReal::zero());
    let in_xu = v == TreeFn::zero();
    assert!(lambda_trace.iter().all(|(_, vl)| fn_le(&v, vl)), "v is below every v_λ");
    assert_eq!(in_xu, classify(u).in_cinfty);
    let w = fin_inf_decompose(a).infinite_part;
    assert_eq!(v, fn_restrict(&e, &classify(&w).pos_inf_interior), "v = P_w e");
    Ok(InfinityReport { v, in_xu, lambda_trace })
}

/// Pointwise product of positive elements with `0 · inf = 0`.
pub fn pos_product(a: &SupElement, b: &SupElement) -> Result<SupElement> {
    let model = same_model(a, b)?;
    check_positive(a.u())?;
    check_positive(b.u())?;
    Ok(SupElement::new(fn_mul(a.u(), b.u()), TreeFn::zero(), model).expect("product is positive"))
}
