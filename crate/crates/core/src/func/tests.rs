use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::extreal::{xr_add, xr_max, xr_min, xr_mul, ExtReal};
use crate::stone::{BranchPoint, Cell, ClopenSet};
use crate::syntax::parse_tree;

fn t(s: &str) -> TreeFn {
    parse_tree(s).unwrap()
}

fn bp(s: &str) -> BranchPoint {
    BranchPoint::parse(s).unwrap()
}

fn cell(s: &str) -> Cell {
    Cell::parse(s).unwrap()
}

/// A tree as generated, before canonicalization.
#[derive(Debug, Clone)]
enum Raw {
    Const(ExtReal),
    Ramp { dir: bool, prefix: Vec<ExtReal>, coeffs: Vec<i64> },
    Split(Box<Raw>, Box<Raw>),
}

impl Raw {
    fn build(&self) -> TreeFn {
        match self {
            Raw::Const(v) => TreeFn::constant(v.clone()),
            Raw::Ramp { dir, prefix, coeffs } => TreeFn::ramp(*dir, prefix.clone(), Poly::from_ints(coeffs)),
            Raw::Split(a, b) => TreeFn::split(a.build(), b.build()),
        }
    }

    /// Direct evaluation: walk the raw tree and evaluate polynomials by hand.
    fn eval(&self, p: &BranchPoint) -> ExtReal {
        let bits = |i: usize| if i < p.prefix().len() { p.prefix()[i] } else { p.tail() };
        let mut node = self;
        let mut i = 0;
        loop {
            match node {
                Raw::Const(v) => return v.clone(),
                Raw::Split(a, b) => {
                    node = if bits(i) { b } else { a };
                    i += 1;
                }
                Raw::Ramp { dir, prefix, coeffs } => {
                    let run_is_infinite = p.tail() == *dir && (i..p.prefix().len()).all(|j| bits(j) == *dir);
                    if run_is_infinite {
                        let top = coeffs.iter().rposition(|c| *c != 0);
                        return match top {
                            None => ExtReal::zero(),
                            Some(0) => ExtReal::int(coeffs[0]),
                            Some(d) if coeffs[d] > 0 => ExtReal::PosInf,
                            Some(_) => ExtReal::NegInf,
                        };
                    }
                    let mut k = 0;
                    while bits(i + k) == *dir {
                        k += 1;
                    }
                    if k < prefix.len() {
                        return prefix[k].clone();
                    }
                    let mut acc = 0i64;
                    for c in coeffs.iter().rev() {
                        acc = acc * k as i64 + c;
                    }
                    return ExtReal::int(acc);
                }
            }
        }
    }
}

fn arb_value() -> impl Strategy<Value = ExtReal> {
    prop_oneof![
        6 => (-6i64..=6).prop_map(ExtReal::int),
        1 => (-6i64..=6, 1i64..=3).prop_map(|(n, d)| ExtReal::frac(n, d)),
        1 => Just(ExtReal::PosInf),
        1 => Just(ExtReal::NegInf),
    ]
}

fn arb_finite() -> impl Strategy<Value = ExtReal> {
    (-6i64..=6).prop_map(ExtReal::int)
}

fn arb_raw_with(value: BoxedStrategy<ExtReal>) -> impl Strategy<Value = Raw> {
    let leaf = prop_oneof![
        2 => value.clone().prop_map(Raw::Const),
        1 => (any::<bool>(), prop::collection::vec(value.clone(), 0..3), prop::collection::vec(-3i64..=3, 1..4))
            .prop_map(|(dir, prefix, coeffs)| Raw::Ramp { dir, prefix, coeffs }),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| Raw::Split(Box::new(a), Box::new(b)))
    })
}

fn arb_raw() -> impl Strategy<Value = Raw> {
    arb_raw_with(arb_value().boxed())
}

/// Functions finite on every cell.
fn arb_raw_finite() -> impl Strategy<Value = Raw> {
    arb_raw_with(arb_finite().boxed())
}

const D: usize = 8;

fn points() -> Vec<BranchPoint> {
    BranchPoint::all_up_to(D)
}

#[test]
fn eval_examples() {
    assert_eq!(eval_at(&t("const 5"), &Probe::Cell(cell("0110"))).unwrap(), ExtReal::int(5));
    let r = TreeFn::on_cell(&cell("1"), TreeFn::ramp(true, vec![], Poly::from_ints(&[0, 1])), ExtReal::zero());
    assert_eq!(eval_at(&r, &Probe::Branch(bp("1(1)^w"))).unwrap(), ExtReal::PosInf);
    assert_eq!(eval_at(&r, &Probe::Cell(cell("1110"))).unwrap(), ExtReal::int(2));
    let r = TreeFn::ramp(true, vec![], Poly::from_ints(&[0, 1]));
    assert_eq!(eval_at(&r, &Probe::Cell(cell("1110"))).unwrap(), ExtReal::int(3));
    assert!(matches!(eval_at(&r, &Probe::Cell(cell("11"))), Err(Error::CellNotResolved(_))));
}

#[test]
fn align_examples() {
    let a = align(&t("const 1"), &t("const 2"));
    assert_eq!(a.len(), 1);
    assert_eq!(a[0].cell, Cell::root());
    let a = align(&t("split(const 1, const 2)"), &t("const 0"));
    assert_eq!(a.iter().map(|c| c.cell.to_string()).collect::<Vec<_>>(), ["0", "1"]);
    let up = TreeFn::ramp(true, vec![], Poly::from_ints(&[0, 1]));
    let down = TreeFn::ramp(false, vec![], Poly::from_ints(&[5, 2]));
    let a = align(&up, &down);
    assert_eq!(a.len(), 2);
    assert_eq!(a[0].left, Leaf::Const(ExtReal::zero()));
    assert_eq!(a[0].right.dir(), Some(false));
    assert_eq!(a[1].left.dir(), Some(true));
    assert_eq!(a[1].right, Leaf::Const(ExtReal::int(5)));
}

#[test]
fn add_examples() {
    let ramp = TreeFn::ramp(true, vec![], Poly::from_ints(&[0, 1]));
    let u = TreeFn::split(t("const 5"), TreeFn::on_cell(&Cell::root(), ramp, ExtReal::zero()));
    let sum = fn_add(&u, &t("const -3")).unwrap();
    assert_eq!(sum.eval_point(&bp("0(1)^w")), ExtReal::int(2));
    assert_eq!(sum.eval_point(&bp("1110(0)^w")), ExtReal::int(-1));
    assert_eq!(sum.eval_point(&bp("(1)^w")), ExtReal::PosInf);
    assert_eq!(fn_add(&u, &TreeFn::zero()).unwrap(), u);

    let down = TreeFn::ramp(true, vec![], Poly::from_ints(&[0, -1]));
    let up2 = TreeFn::ramp(true, vec![], Poly::from_ints(&[0, 2]));
    let s = fn_add(&down, &up2).unwrap();
    assert_eq!(s, TreeFn::ramp(true, vec![], Poly::from_ints(&[0, 1])));
    assert_eq!(s.eval_point(&bp("(1)^w")), ExtReal::PosInf);

    let bad = t("split(const -inf, const 0)");
    assert_eq!(fn_add(&bad, &t("const 1")), Err(Error::SumUndefined(cell("0"))));
}

#[test]
fn scalar_and_neg_examples() {
    let u = t("split(const +inf, const 1)");
    assert_eq!(fn_scalar(&ExtReal::zero(), &u).unwrap(), TreeFn::zero());
    let r = TreeFn::ramp(true, vec![], Poly::from_ints(&[0, 1]));
    assert_eq!(fn_scalar(&ExtReal::int(2), &r).unwrap(), TreeFn::ramp(true, vec![], Poly::from_ints(&[0, 2])));
    assert!(matches!(fn_scalar(&ExtReal::int(-1), &r), Err(Error::NegativeScalar(_))));
    assert!(matches!(fn_scalar(&ExtReal::PosInf, &r), Err(Error::NegativeScalar(_))));
    assert_eq!(fn_neg(&u), Err(Error::NotNegatable(cell("0"))));
    assert_eq!(fn_neg(&r).unwrap(), TreeFn::ramp(true, vec![], Poly::from_ints(&[0, -1])));
}

#[test]
fn lattice_examples() {
    let u = t("split(const -inf, ramp(0; 3; poly[1, 1]))");
    assert_eq!(fn_meet(&u, &u), u);
    let j = fn_join(&t("split(const -inf, const 3)"), &TreeFn::zero());
    assert_eq!(j, t("split(const 0, const 3)"));
    let id = TreeFn::ramp(true, vec![], Poly::from_ints(&[0, 1]));
    let m = fn_meet(&id, &t("const 10"));
    let expect: Vec<ExtReal> = (0..10).map(ExtReal::int).collect();
    assert_eq!(m, TreeFn::ramp(true, expect, Poly::from_ints(&[10])));
    assert_eq!(m.eval_point(&bp("(1)^w")), ExtReal::int(10));
    assert_eq!(m.eval_point(&bp("1111110(0)^w")), ExtReal::int(6));
    assert_eq!(fn_sup(&[]), Err(Error::EmptyFamily));
    assert_eq!(fn_inf(std::slice::from_ref(&u)).unwrap(), u);
}

#[test]
fn classify_examples() {
    let c = classify(&t("split(const +inf, const 1)"));
    assert!(!c.in_cinfty);
    assert_eq!(c.pos_inf_interior, ClopenSet::parse("{0}").unwrap());
    assert!(c.neg_inf_interior_empty);
    let c = classify(&TreeFn::ramp(false, vec![], Poly::from_ints(&[0, 1])));
    assert!(c.in_cinfty && !c.in_ck);
    assert!(classify(&t("const 7")).in_ck);
    let c = classify(&t("ramp(1; -inf, 2; poly[0, 1])"));
    assert_eq!(c.neg_inf_interior, ClopenSet::parse("{0}").unwrap());
}

#[test]
fn extend_examples() {
    let seq = |prefix: Vec<ExtReal>, coeffs: &[i64]| Seq::new(prefix, Tail::Poly(Poly::from_ints(coeffs)));
    let p = PartialFn::new(PartialNode::Ramp { dir: true, seq: seq(vec![], &[1]), branch: None });
    assert_eq!(extend_from_dense(&p).unwrap(), t("const 1"));
    let p = PartialFn::new(PartialNode::Ramp { dir: false, seq: seq(vec![], &[2, -3]), branch: None });
    assert_eq!(p.domain().excluded(), &[bp("(0)^w")]);
    assert_eq!(extend_from_dense(&p).unwrap().eval_point(&bp("(0)^w")), ExtReal::NegInf);
    let evens: Vec<ExtReal> = (0..6).map(|k| ExtReal::int(if k % 2 == 0 { k } else { 0 })).collect();
    let p = PartialFn::new(PartialNode::Ramp { dir: true, seq: seq(evens, &[0, 1]), branch: None });
    assert_eq!(extend_from_dense(&p).unwrap().eval_point(&bp("(1)^w")), ExtReal::PosInf);
    let p = PartialFn::new(PartialNode::Ramp { dir: true, seq: seq(vec![], &[0, 1]), branch: Some(ExtReal::int(4)) });
    assert_eq!(extend_from_dense(&p), Err(Error::Discontinuous(bp("(1)^w"))));
}

#[test]
fn fn_le_is_exact_past_sampling_depth() {
    // k and 40 cross far below depth 10
    let id = TreeFn::ramp(true, vec![], Poly::from_ints(&[0, 1]));
    assert!(!fn_le(&id, &t("const 40")));
    assert_eq!(find_point(&id, &t("const 40"), |a, b| a > b), Some(bp(&format!("{}0(0)^w", "1".repeat(41)))));
}

fn check_pointwise(
    u: &Raw,
    v: &Raw,
    got: &TreeFn,
    op: impl Fn(&ExtReal, &ExtReal) -> Option<ExtReal>,
) -> Result<(), TestCaseError> {
    for p in points() {
        if let Some(want) = op(&u.eval(&p), &v.eval(&p)) {
            prop_assert_eq!(got.eval_point(&p), want, "at {}", p);
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn canonical_eval_matches_raw(u in arb_raw()) {
        let f = u.build();
        for p in points() {
            prop_assert_eq!(f.eval_point(&p), u.eval(&p), "at {}", p);
        }
        prop_assert_eq!(parse_tree(&f.to_string()).unwrap(), f.clone());
        prop_assert_eq!(TreeFn::from_node(f.root().clone()), f);
    }

    #[test]
    fn align_preserves_values(u in arb_raw(), v in arb_raw()) {
        let (f, g) = (u.build(), v.build());
        let cells = align(&f, &g);
        for p in points() {
            let ac = cells.iter().find(|c| c.cell.contains(&p)).expect("cover");
            let on = |leaf: &Leaf| TreeFn::on_cell(&ac.cell, TreeFn::from_node(Node::Leaf(leaf.clone())), ExtReal::zero());
            prop_assert_eq!(on(&ac.left).eval_point(&p), u.eval(&p));
            prop_assert_eq!(on(&ac.right).eval_point(&p), v.eval(&p));
        }
    }

    #[test]
    fn meet_join_mul_pointwise(u in arb_raw(), v in arb_raw()) {
        let (f, g) = (u.build(), v.build());
        check_pointwise(&u, &v, &fn_meet(&f, &g), |a, b| Some(xr_min(a, b)))?;
        check_pointwise(&u, &v, &fn_join(&f, &g), |a, b| Some(xr_max(a, b)))?;
        check_pointwise(&u, &v, &fn_mul(&f, &g), |a, b| Some(xr_mul(a, b)))?;
        prop_assert_eq!(fn_le(&fn_meet(&f, &g), &f), true);
        prop_assert_eq!(fn_le(&f, &fn_join(&f, &g)), true);
    }

    #[test]
    fn add_pointwise_where_defined(u in arb_raw(), v in arb_raw()) {
        let (f, g) = (u.build(), v.build());
        match fn_add(&f, &g) {
            Ok(s) => check_pointwise(&u, &v, &s, |a, b| xr_add(a, b).ok())?,
            Err(Error::SumUndefined(c)) => {
                let both = classify(&f).neg_inf_interior.join(&classify(&g).neg_inf_interior);
                prop_assert!(both.contains_cell(&c));
            }
            Err(e) => prop_assert!(false, "unexpected {}", e),
        }
    }

    #[test]
    fn add_laws(u in arb_raw_finite(), v in arb_raw_finite(), w in arb_raw_finite(), l in 0i64..4, m in 0i64..4) {
        let (f, g, h) = (u.build(), v.build(), w.build());
        let add = |a: &TreeFn, b: &TreeFn| fn_add(a, b).unwrap();
        prop_assert_eq!(add(&f, &g), add(&g, &f));
        prop_assert_eq!(add(&add(&f, &g), &h), add(&f, &add(&g, &h)));
        let (l, m) = (ExtReal::int(l), ExtReal::int(m));
        let sc = |s: &ExtReal, a: &TreeFn| fn_scalar(s, a).unwrap();
        prop_assert_eq!(sc(&l, &add(&f, &g)), add(&sc(&l, &f), &sc(&l, &g)));
        let lm = xr_add(&l, &m).unwrap();
        prop_assert_eq!(sc(&lm, &f), add(&sc(&l, &f), &sc(&m, &f)));
        prop_assert_eq!(fn_sub(&f, &f).unwrap(), TreeFn::zero());
    }

    #[test]
    fn scalar_pointwise(u in arb_raw(), n in 0i64..5, d in 1i64..4) {
        let lambda = ExtReal::Finite(BigRational::new(n.into(), d.into()));
        let s = fn_scalar(&lambda, &u.build()).unwrap();
        for p in points() {
            prop_assert_eq!(s.eval_point(&p), xr_mul(&lambda, &u.eval(&p)));
        }
    }

    #[test]
    fn extension_recovers_branch_values(u in arb_raw()) {
        let f = u.build();
        let partial = PartialFn::forget_branches(&f);
        prop_assert_eq!(extend_from_dense(&partial).unwrap(), f.clone());
        let pts = f.singular_points();
        prop_assert_eq!(partial.domain().excluded().len(), pts.len());
        for (p, _) in pts {
            prop_assert!(!partial.domain().contains(&p));
        }
    }
}
