use rand::Rng;

use crate::error::Error;
use crate::extreal::{xr_max, xr_min, ExtReal};
use crate::func::{
    classify, eval_at, fn_add, fn_indicator, fn_join, fn_le, fn_meet, fn_pos, fn_restrict, fn_sup, Leaf, Probe, TreeFn,
};
use crate::iso::{j_formula_check, j_inverse, j_transport};
use crate::stone::{BranchPoint, ClopenSet};
use crate::supcomp::{
    band_project, cone_add, cone_inf, cone_inverse, cone_join, cone_meet, cone_scalar, cone_sup, fin_inf_decompose,
    infinity_test, member, order_dense_witness, pos_product, riesz_decompose, support_closure, truncation_check, Model,
    SupElement,
};

use super::gen::*;
use super::{Outcome, Trial};

pub struct Check {
    pub name: &'static str,
    pub run: fn(&mut Trial) -> Outcome,
}

/// The cone axioms: order, lattice, greatest element, ideal, finite order
/// completeness, truncated order density, distributivity, sup-sup.
pub const AXIOM_CHECKS: [&str; 8] = ["order", "lattice", "greatest", "ideal", "oc", "o-dense", "dist", "sup-sup"];

pub fn registry() -> &'static [Check] {
    const CHECKS: &[Check] = &[
        Check { name: "order", run: order },
        Check { name: "lattice", run: lattice },
        Check { name: "greatest", run: greatest },
        Check { name: "ideal", run: ideal },
        Check { name: "oc", run: oc },
        Check { name: "o-dense", run: o_dense },
        Check { name: "dist", run: dist },
        Check { name: "sup-sup", run: sup_sup },
        Check { name: "add-laws", run: add_laws },
        Check { name: "c0", run: c0 },
        Check { name: "distr", run: distr },
        Check { name: "riesz", run: riesz },
        Check { name: "riesz-reject", run: riesz_reject },
        Check { name: "decompose", run: decompose },
        Check { name: "inftest", run: inftest },
        Check { name: "truncation", run: truncation },
        Check { name: "j-map", run: j_map },
        Check { name: "product", run: product },
        Check { name: "sublattice", run: sublattice },
    ];
    CHECKS
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<E: std::fmt::Display, T>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn el(t: &mut Trial, name: &str) -> SupElement {
    let a = gen_element(t.cfg, &mut t.rng);
    t.note(name, a)
}

fn pos(t: &mut Trial, name: &str) -> SupElement {
    let a = gen_positive(t.cfg, &mut t.rng);
    t.note(name, a)
}

fn x(t: &mut Trial, name: &str) -> TreeFn {
    let f = gen_x(t.cfg, &mut t.rng);
    t.note(name, f)
}

fn family(t: &mut Trial, name: &str, lo: usize, hi: usize) -> Vec<SupElement> {
    let n = t.rng.random_range(lo..=hi);
    (0..n).map(|i| el(t, &format!("{name}[{i}]"))).collect()
}

/// Branch points with prefixes of length at most 6.
fn probe_points() -> Vec<BranchPoint> {
    BranchPoint::all_up_to(6)
}

/// Probes covering every leaf datum of `u`: constant cells, ramp prefix
/// subcells, the first tail subcell, and ramp branch points.
fn data_probes(u: &TreeFn) -> Vec<(Probe, ExtReal)> {
    let mut out = Vec::new();
    for (cell, leaf) in u.leaves() {
        match leaf {
            Leaf::Const(v) => out.push((Probe::Cell(cell), v.clone())),
            Leaf::Ramp(r) => {
                let (dir, s) = (r.dir(), r.seq());
                for k in 0..=s.start() {
                    out.push((Probe::Cell(cell.extend(dir, k).child(!dir)), s.value(k)));
                }
                out.push((Probe::Branch(cell.branch(dir)), r.limit()));
            }
        }
    }
    out
}

fn max_finite_ceil(u: &TreeFn) -> i64 {
    use num_traits::ToPrimitive;
    u.leaf_values()
        .iter()
        .filter_map(|v| v.as_finite().map(|q| q.ceil().to_integer().to_i64().unwrap_or(i64::MAX)))
        .max()
        .unwrap_or(0)
}

fn order(t: &mut Trial) -> Outcome {
    let a = el(t, "a");
    let d = pos(t, "d");
    let e = el(t, "e");
    let c = el(t, "c");
    let lambda = gen_lambda(&mut t.rng);
    let lambda = t.note("lambda", lambda);
    for b in [ok(cone_add(&a, &d), "a + d")?, ok(cone_join(&a, &e), "a v e")?] {
        ensure!(fn_le(a.u(), b.u()), "a <= b fails for b = {b}");
        let (ac, bc) = (ok(cone_add(&a, &c), "a + c")?, ok(cone_add(&b, &c), "b + c")?);
        ensure!(fn_le(ac.u(), bc.u()), "a + c <= b + c fails for b = {b}");
        let (la, lb) = (ok(cone_scalar(&lambda, &a), "λa")?, ok(cone_scalar(&lambda, &b), "λb")?);
        ensure!(fn_le(la.u(), lb.u()), "λa <= λb fails for b = {b}");
    }
    Ok(vec![])
}

fn lattice(t: &mut Trial) -> Outcome {
    let a = el(t, "a");
    let b = el(t, "b");
    let meet = t.ops.meet;
    let m = meet(a.u(), b.u());
    let j = fn_join(a.u(), b.u());
    for p in probe_points() {
        let (va, vb) = (a.u().eval_point(&p), b.u().eval_point(&p));
        ensure!(m.eval_point(&p) == xr_min(&va, &vb), "meet is not the pointwise minimum at {p}: {m}");
        ensure!(j.eval_point(&p) == xr_max(&va, &vb), "join is not the pointwise maximum at {p}: {j}");
    }
    ensure!(fn_le(&m, a.u()) && fn_le(&m, b.u()), "meet is not a lower bound: {m}");
    ensure!(fn_le(a.u(), &j) && fn_le(b.u(), &j), "join is not an upper bound: {j}");
    ensure!(meet(a.u(), &j) == *a.u(), "a ∧ (a ∨ b) != a");
    ensure!(fn_join(a.u(), &m) == *a.u(), "a ∨ (a ∧ b) != a");
    ensure!(m == meet(b.u(), a.u()), "meet is not commutative");
    let cm = ok(cone_meet(&a, &b), "cone meet")?;
    let cj = ok(cone_join(&a, &b), "cone join")?;
    ok(SupElement::new(cm.u().clone(), cm.witness().clone(), cm.model()), "meet witness")?;
    ok(SupElement::new(cj.u().clone(), cj.witness().clone(), cj.model()), "join witness")?;
    Ok(vec![])
}

fn greatest(t: &mut Trial) -> Outcome {
    let a = el(t, "a");
    let top = SupElement::top(a.model());
    ensure!(fn_le(a.u(), top.u()), "a <= +inf fails");
    ensure!(ok(cone_add(&top, &a), "top + a")?.u() == top.u(), "+inf + a != +inf");
    ensure!(fn_meet(top.u(), a.u()) == *a.u(), "+inf ∧ a != a");
    ensure!(fn_join(top.u(), a.u()) == *top.u(), "+inf ∨ a != +inf");
    ensure!(member(top.u(), a.model()).is_ok(), "+inf is not a member");
    Ok(vec![])
}

fn ideal(t: &mut Trial) -> Outcome {
    let h = x(t, "h");
    let a = el(t, "a");
    let model = a.model();
    let v = ok(cone_meet(&a, &SupElement::new(h.clone(), h.clone(), model).expect("h in X")), "a ∧ h")?;
    ensure!(fn_le(v.u(), &h), "v <= h fails");
    ensure!(model.contains(v.u()), "v <= h with h in X but v = {v} is not in X");
    Ok(if v.u() != a.u() { vec!["proper"] } else { vec![] })
}

fn oc(t: &mut Trial) -> Outcome {
    let fam = family(t, "A", 2, 5);
    let s = ok(cone_sup(&fam), "sup")?;
    let points = probe_points();
    for p in &points {
        let want = fam.iter().map(|a| a.u().eval_point(p)).max().expect("nonempty");
        ensure!(s.u().eval_point(p) == want, "sup is not the pointwise maximum at {p}");
    }
    let lower_fn = fam.iter().skip(1).fold(fam[0].witness().clone(), |acc, a| fn_meet(&acc, a.witness()));
    let lower = SupElement::new(lower_fn.clone(), lower_fn, s.model()).expect("meet of witnesses");
    let i = ok(cone_inf(&fam, &lower), "inf")?;
    ok(SupElement::new(i.u().clone(), i.witness().clone(), i.model()), "inf witness")?;
    for p in &points {
        let want = fam.iter().map(|a| a.u().eval_point(p)).min().expect("nonempty");
        ensure!(i.u().eval_point(p) == want, "inf is not the pointwise minimum at {p}");
    }
    let top = SupElement::top(s.model());
    if fam.iter().any(|a| a.u() != top.u()) {
        ensure!(matches!(cone_inf(&fam, &top), Err(Error::NoLowerBound(_))), "+inf accepted as a lower bound");
    }
    Ok(vec![])
}

fn o_dense(t: &mut Trial) -> Outcome {
    let a = el(t, "a");
    let model = a.model();
    let low: i64 = t.rng.random_range(1..=3);
    let high = low + max_finite_ceil(a.u()).max(0) + 2;
    let fam_low = order_dense_witness(&a, low);
    let fam = order_dense_witness(&a, high);
    for f in fam_low.iter().chain(&fam) {
        ensure!(model.contains(f), "family member {f} is not in X");
        ensure!(fn_le(f, a.u()), "family member {f} is not below u");
    }
    ensure!(fam.windows(2).all(|w| fn_le(&w[0], &w[1])), "family is not increasing");
    if model.contains(a.u()) {
        ensure!(fam == vec![a.u().clone()], "u in X but family is not {{u}}");
        return Ok(vec!["in-x"]);
    }
    let cap = |n: i64| fn_meet(a.u(), &TreeFn::constant(ExtReal::int(n)));
    let (t_low, t_high) = (fam_low.last().expect("nonempty"), fam.last().expect("nonempty"));
    ensure!(*t_high == cap(high), "sup of the family is not u truncated at {high}");
    ensure!(fn_le(t_low, t_high), "truncations do not increase");
    for (probe, v) in data_probes(a.u()) {
        let got = ok(eval_at(t_high, &probe), "eval")?;
        match v {
            ExtReal::PosInf => ensure!(got == ExtReal::int(high), "+inf datum at {probe:?} truncates to {got}"),
            v => ensure!(got == v, "finite datum {v} at {probe:?} has not stabilized: {got}"),
        }
    }
    Ok(vec![])
}

fn dist(t: &mut Trial) -> Outcome {
    let u = el(t, "u");
    let v = el(t, "v");
    let f = x(t, "f");
    let meet = t.ops.meet;
    let lhs = ok(fn_add(u.u(), &meet(&f, v.u())), "u + (f ∧ v)")?;
    let rhs = meet(&ok(fn_add(u.u(), &f), "u + f")?, &ok(fn_add(u.u(), v.u()), "u + v")?);
    ensure!(lhs == rhs, "u + (f ∧ v) = {lhs} but (u + f) ∧ (u + v) = {rhs}");
    Ok(vec![])
}

fn sup_sup(t: &mut Trial) -> Outcome {
    let a = family(t, "A", 2, 4);
    let g = el(t, "g");
    let f = x(t, "f");
    let mut b = vec![ok(cone_join(&a[0], &a[1]), "join")?];
    b.extend(a[2..].iter().cloned());
    b.push(ok(cone_meet(&a[0], &g), "meet")?);
    let (sa, sb) = (ok(cone_sup(&a), "sup A")?, ok(cone_sup(&b), "sup B")?);
    ensure!(sa == sb, "constructed families have different suprema");
    let meet = t.ops.meet;
    let cut = |fam: &[SupElement]| fn_sup(&fam.iter().map(|c| meet(c.u(), &f)).collect::<Vec<_>>());
    let (ca, cb) = (ok(cut(&a), "sup A ∧ f")?, ok(cut(&b), "sup B ∧ f")?);
    ensure!(ca == cb, "sup(A ∧ f) = {ca} but sup(B ∧ f) = {cb}");
    Ok(vec![])
}

fn add_laws(t: &mut Trial) -> Outcome {
    let a = el(t, "a");
    let b = el(t, "b");
    let c = el(t, "c");
    let g = x(t, "g");
    let add = |p: &SupElement, q: &SupElement| cone_add(p, q).map_err(|e| format!("add: {e}"));
    ensure!(add(&a, &b)?.u() == add(&b, &a)?.u(), "a + b != b + a");
    ensure!(add(&add(&a, &b)?, &c)?.u() == add(&a, &add(&b, &c)?)?.u(), "(a + b) + c != a + (b + c)");
    ensure!(add(&a, &SupElement::zero(a.model()))?.u() == a.u(), "a + 0 != a");
    let a2 = ok(SupElement::new(a.u().clone(), fn_meet(a.witness(), &g), a.model()), "second witness")?;
    let (s1, s2) = (add(&a, &b)?, add(&a2, &b)?);
    ensure!(s1.u() == s2.u(), "sum depends on the witness: {s1} vs {s2}");
    Ok(if a2.witness() != a.witness() { vec!["distinct-witness"] } else { vec![] })
}

fn c0(t: &mut Trial) -> Outcome {
    let a = if t.rng.random_bool(0.5) {
        let e = gen_x_element(t.cfg, &mut t.rng);
        t.note("a", e)
    } else {
        el(t, "a")
    };
    let inv = cone_inverse(&a);
    let in_x = a.model().contains(a.u());
    ensure!(inv.is_ok() == in_x, "invertible = {} but in X = {in_x}", inv.is_ok());
    if let Ok(b) = inv {
        ensure!(ok(cone_add(&a, &b), "a + (-a)")?.u() == &TreeFn::zero(), "a + (-a) != 0");
        return Ok(vec!["invertible"]);
    }
    Ok(vec!["not-invertible"])
}

fn distr(t: &mut Trial) -> Outcome {
    let u = el(t, "u");
    let n = t.rng.random_range(1..=4);
    let fam: Vec<TreeFn> = (0..n).map(|i| x(t, &format!("A[{i}]"))).collect();
    let shifted = fam.iter().map(|f| fn_add(u.u(), f)).collect::<Result<Vec<_>, _>>();
    let lhs = ok(fn_sup(&ok(shifted, "u + a")?), "sup")?;
    let rhs = ok(fn_add(u.u(), &ok(fn_sup(&fam), "sup A")?), "u + sup A")?;
    ensure!(lhs == rhs, "sup(u + A) = {lhs} but u + sup A = {rhs}");
    Ok(vec![])
}

fn riesz(t: &mut Trial) -> Outcome {
    let mut u = el(t, "u");
    let mut v = pos(t, "v");
    match t.rng.random_range(0..3) {
        0 => u = ok(cone_join(&u, &gen_inf_bump(t.cfg, &mut t.rng)), "bump")?,
        1 => v = ok(cone_join(&v, &gen_inf_bump(t.cfg, &mut t.rng)), "bump")?,
        _ => {}
    }
    let g = el(t, "g");
    let s = ok(cone_add(&u, &v), "u + v")?;
    let xe = ok(cone_meet(&g, &s), "x")?;
    t.note("u'", &u);
    t.note("v'", &v);
    let (y, z) = ok(riesz_decompose(&xe, &u, &v), "riesz")?;
    ensure!(ok(fn_add(y.u(), z.u()), "y + z")? == *xe.u(), "x != y + z");
    ensure!(fn_le(y.u(), u.u()), "y <= u fails");
    ensure!(fn_le(z.u(), v.u()), "z <= v fails");
    for e in [&y, &z] {
        ok(SupElement::new(e.u().clone(), e.witness().clone(), e.model()), "part witness")?;
    }
    let model = xe.model();
    if [&xe, &u, &v].iter().all(|e| model.contains(e.u())) {
        ensure!(model.contains(y.u()) && model.contains(z.u()), "parts of X inputs left X");
    }
    let mut tags = vec![];
    if !classify(u.u()).pos_inf_interior.is_empty() {
        tags.push("u-infinite-part");
    }
    if !classify(v.u()).pos_inf_interior.is_empty() {
        tags.push("v-infinite-part");
    }
    Ok(tags)
}

fn riesz_reject(t: &mut Trial) -> Outcome {
    let mut attempt = 0;
    let (u, v, s) = loop {
        let u = if attempt > 2 {
            let e = gen_x_element(t.cfg, &mut t.rng);
            t.note("u", e)
        } else {
            el(t, "u")
        };
        let v = pos(t, "v");
        let s = ok(cone_add(&u, &v), "u + v")?;
        if classify(s.u()).pos_inf_interior.is_full() {
            attempt += 1;
            continue;
        }
        break (u, v, s);
    };
    let one = SupElement::new(TreeFn::one(), TreeFn::one(), s.model()).expect("1 in X");
    let xe = ok(cone_add(&s, &one), "x")?;
    match riesz_decompose(&xe, &u, &v) {
        Err(Error::PreconditionFailed(p)) => {
            let (xp, sp) = (xe.u().eval_point(&p), s.u().eval_point(&p));
            ensure!(xp > sp, "reported point {p} has x = {xp} <= u + v = {sp}");
            Ok(vec![])
        }
        other => Err(format!("expected PreconditionFailed, got {other:?}")),
    }
}

fn decompose(t: &mut Trial) -> Outcome {
    let ramp_only = t.rng.random_ratio(1, 4);
    let a = if ramp_only {
        let u = gen_rising_ramp_fn(t.cfg, &mut t.rng);
        t.note("a", SupElement::from_fn(u, t.cfg.model).expect("finite a.e. and bounded below"))
    } else {
        el(t, "a")
    };
    let u = a.u();
    let d = fin_inf_decompose(&a);
    ensure!(ok(fn_add(&d.finite_part, &d.infinite_part), "x + w")? == *u, "u != x + w");
    ensure!(
        support_closure(&d.finite_part).is_disjoint(&support_closure(&d.infinite_part)),
        "x and w are not disjoint"
    );
    ensure!(classify(&d.finite_part).in_cinfty, "finite part {} is not finite a.e.", d.finite_part);
    ensure!(
        d.infinite_part.leaf_values().iter().all(|v| v.is_zero() || *v == ExtReal::PosInf),
        "infinite part takes values other than 0 and +inf"
    );
    let top = classify(&d.infinite_part).pos_inf_interior;
    ensure!(fn_indicator(&top, ExtReal::PosInf, ExtReal::zero()) == d.infinite_part, "{{w = +inf}} is not clopen");
    ensure!(d.carrier == top.complement(), "carrier is not the complement of {{w = +inf}}");
    let in_xu = classify(u).in_cinfty;
    ensure!(in_xu == (d.infinite_part == TreeFn::zero()), "u in X^u = {in_xu} but w = {}", d.infinite_part);
    if ramp_only {
        ensure!(d.finite_part == *u && d.infinite_part == TreeFn::zero(), "ramp infinity left the finite part");
        return Ok(vec!["ramp-only-infinity"]);
    }
    Ok(vec![])
}

fn inftest(t: &mut Trial) -> Outcome {
    let ramp_only = t.rng.random_ratio(1, 4);
    let a = if ramp_only {
        let u = fn_pos(&gen_rising_ramp_fn(t.cfg, &mut t.rng));
        t.note("a", SupElement::new(u, TreeFn::zero(), t.cfg.model).expect("positive"))
    } else {
        pos(t, "a")
    };
    let r = ok(infinity_test(&a), "infinity test")?;
    let mut cells = Vec::new();
    for (probe, v) in data_probes(a.u()) {
        if let (Probe::Cell(c), ExtReal::PosInf) = (probe, v) {
            cells.push(c);
        }
    }
    let expect = fn_indicator(&ClopenSet::normalize(cells), ExtReal::one(), ExtReal::zero());
    ensure!(r.v == expect, "v = {} but the +inf cells give {expect}", r.v);
    let w = fin_inf_decompose(&a).infinite_part;
    let pwe = band_project(&support_closure(&w), &TreeFn::one());
    ensure!(r.v == pwe, "v != P_w e = {pwe}");
    let in_cinfty = classify(a.u()).in_cinfty;
    ensure!(r.in_xu == in_cinfty && r.in_xu == (r.v == TreeFn::zero()), "in_Xu disagrees with classify");
    for (i, (lambda, vl)) in r.lambda_trace.iter().enumerate() {
        ensure!(fn_le(&r.v, vl), "v is not below v_λ at λ = {lambda}");
        if let Some((_, next)) = r.lambda_trace.get(i + 1) {
            ensure!(fn_le(next, vl), "v_λ does not decrease after λ = {lambda}");
        }
    }
    let all_nonzero = r.lambda_trace.iter().all(|(_, vl)| *vl != TreeFn::zero());
    if ramp_only || (a.u().has_ramps() && in_cinfty) {
        ensure!(all_nonzero && r.v == TreeFn::zero(), "rising ramp: every v_λ must be nonzero and v zero");
        return Ok(vec!["unbounded-finite"]);
    }
    Ok(vec![])
}

fn truncation(t: &mut Trial) -> Outcome {
    let a = pos(t, "a");
    let r = ok(truncation_check(&a), "truncation")?;
    ensure!(r.verified, "leafwise convergence certificate does not verify");
    ensure!(r.steps.windows(2).all(|w| fn_le(&w[0], &w[1])), "t_n is not increasing");
    ensure!(r.steps.iter().all(|s| fn_le(s, a.u())), "t_n is not below u");
    let last = r.steps.last().expect("at least one step");
    let n = r.steps.len() as i64;
    for (probe, v) in data_probes(a.u()) {
        let got = ok(eval_at(last, &probe), "eval")?;
        let want = if v == ExtReal::PosInf { ExtReal::int(n) } else { v };
        ensure!(got == want, "t_{n} at {probe:?} is {got}, expected {want}");
    }
    Ok(if a.u().leaf_values().contains(&ExtReal::PosInf) { vec!["unbounded"] } else { vec![] })
}

fn j_map(t: &mut Trial) -> Outcome {
    let u = gen_flat(t.cfg, &mut t.rng);
    let u = t.note("u", u);
    let v = gen_flat(t.cfg, &mut t.rng);
    let v = t.note("v", v);
    let lambda = gen_lambda(&mut t.rng);
    let lambda = t.note("lambda", lambda);
    let model = t.cfg.model;
    let (ju, jv) = (j_transport(&u), j_transport(&v));
    let sum = ok(u.add(&v), "flat sum")?;
    ensure!(j_transport(&sum) == ok(fn_add(&ju, &jv), "tree sum")?, "J(u + v) != Ju + Jv");
    ensure!(j_transport(&u.scale(&lambda)) == ok(crate::func::fn_scalar(&lambda, &ju), "scale")?, "J(λu) != λJu");
    ensure!(u.le(&v) == fn_le(&ju, &jv), "u <= v is not reflected by J");
    let w = u.meet(&v);
    ensure!(fn_le(&j_transport(&w), &ju) && j_transport(&w) == fn_meet(&ju, &jv), "J does not preserve meets");
    ensure!(ok(j_inverse(&ju, u.depth()), "inverse")? == u, "J^-1 J u != u");
    if u.is_finite() {
        ensure!(model.contains(&ju), "J maps a finite u outside X");
    }
    for n in 1..=3 {
        let c = j_formula_check(&u, model, n);
        ensure!(c.holds, "J formula fails at height {n} on {:?}", c.separating);
    }
    Ok(if u.is_finite() { vec!["in-x"] } else { vec![] })
}

fn product(t: &mut Trial) -> Outcome {
    let a = pos(t, "a");
    let b = pos(t, "b");
    let c = pos(t, "c");
    let s = pos(t, "s");
    let mul = |p: &SupElement, q: &SupElement| pos_product(p, q).map_err(|e| format!("product: {e}"));
    let model = a.model();
    let e = SupElement::new(TreeFn::one(), TreeFn::one(), model).expect("1 in X");
    ensure!(mul(&e, &a)?.u() == a.u(), "e·a != a");
    ensure!(mul(&a, &b)?.u() == mul(&b, &a)?.u(), "ab != ba");
    ensure!(mul(&mul(&a, &b)?, &c)?.u() == mul(&a, &mul(&b, &c)?)?.u(), "(ab)c != a(bc)");
    let bc = ok(cone_add(&b, &c), "b + c")?;
    let rhs = ok(cone_add(&mul(&a, &b)?, &mul(&a, &c)?), "ab + ac")?;
    ensure!(mul(&a, &bc)?.u() == rhs.u(), "a(b + c) != ab + ac");
    let set = gen_clopen(&mut t.rng);
    let set = t.note("U", set);
    let ind = SupElement::new(fn_indicator(&set, ExtReal::one(), ExtReal::zero()), TreeFn::zero(), model).expect("pos");
    let inf = SupElement::new(fn_indicator(&set.complement(), ExtReal::PosInf, ExtReal::zero()), TreeFn::zero(), model)
        .expect("pos");
    ensure!(mul(&ind, &inf)?.u() == &TreeFn::zero(), "1_U · (+inf · 1_U^c) != 0");
    let p = SupElement::new(fn_restrict(a.u(), &set), TreeFn::zero(), model).expect("pos");
    let q = SupElement::new(fn_restrict(b.u(), &set.complement()), TreeFn::zero(), model).expect("pos");
    ensure!(fn_meet(p.u(), q.u()) == TreeFn::zero(), "restricted parts are not disjoint");
    ensure!(fn_meet(mul(&p, &s)?.u(), q.u()) == TreeFn::zero(), "product does not preserve disjointness");
    Ok(vec![])
}

fn sublattice(t: &mut Trial) -> Outcome {
    let full = t.cfg.clone().with_model(Model::Full);
    let raw = gen_element(&full, &mut t.rng);
    let u = t.note("u", fn_pos(raw.u()));
    let bounded = member(&u, Model::Bounded).is_ok();
    let full = member(&u, Model::Full).is_ok();
    ensure!(bounded == full, "positive u: bounded membership {bounded}, full membership {full}");
    Ok(if u.has_ramps() { vec!["ramps"] } else { vec![] })
}
