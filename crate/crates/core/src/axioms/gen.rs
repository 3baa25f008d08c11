use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::extreal::ExtReal;
use crate::func::{fn_indicator, fn_pos, Poly, TreeFn};
use crate::iso::FlatFn;
use crate::stone::{Cell, ClopenSet};
use crate::supcomp::{member, Model, SupElement};

use super::{GenConfig, Prob};

fn hit(rng: &mut ChaCha8Rng, p: Prob) -> bool {
    p.num > 0 && rng.random_ratio(p.num.min(p.den), p.den)
}

pub fn gen_rational(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> ExtReal {
    let r = cfg.value_range.max(1);
    let num = rng.random_range(-r..=r);
    let den = rng.random_range(1..=3);
    ExtReal::frac(num, den)
}

fn gen_value(cfg: &GenConfig, rng: &mut ChaCha8Rng, inf: bool) -> ExtReal {
    if inf && hit(rng, cfg.inf_probability) {
        ExtReal::PosInf
    } else {
        gen_rational(cfg, rng)
    }
}

/// A polynomial of degree 1 or 2 with small integer coefficients. The leading
/// coefficient is positive unless `any_sign`.
fn gen_poly(rng: &mut ChaCha8Rng, any_sign: bool) -> Poly {
    let degree = rng.random_range(1..=2);
    let mut coeffs: Vec<i64> = (0..degree).map(|_| rng.random_range(-3..=3)).collect();
    let lead = rng.random_range(1..=2);
    coeffs.push(if any_sign && rng.random_bool(0.5) { -lead } else { lead });
    Poly::from_ints(&coeffs)
}

#[derive(Debug, Clone, Copy)]
struct Shape {
    inf_cells: bool,
    ramps: bool,
    falling_ramps: bool,
}

fn gen_tree(cfg: &GenConfig, rng: &mut ChaCha8Rng, depth: usize, shape: Shape) -> TreeFn {
    if depth < cfg.max_depth && rng.random_ratio(2, 3 + depth as u32) {
        let a = gen_tree(cfg, rng, depth + 1, shape);
        let b = gen_tree(cfg, rng, depth + 1, shape);
        return TreeFn::split(a, b);
    }
    if shape.ramps && hit(rng, cfg.ramp_probability) {
        let dir = rng.random_bool(0.5);
        let len = rng.random_range(0..=2);
        let prefix = (0..len).map(|_| gen_value(cfg, rng, shape.inf_cells)).collect();
        return TreeFn::ramp(dir, prefix, gen_poly(rng, shape.falling_ramps));
    }
    TreeFn::constant(gen_value(cfg, rng, shape.inf_cells))
}

/// A cone element of `cfg.model`. Constants, `+inf` cells and ramps of degree
/// at most 2 all occur; ramps falling to `-inf` only in the full model.
pub fn gen_element(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> SupElement {
    let shape = Shape { inf_cells: true, ramps: true, falling_ramps: cfg.model == Model::Full };
    loop {
        let u = gen_tree(cfg, rng, 0, shape);
        if let Ok(witness) = member(&u, cfg.model) {
            return SupElement::new(u, witness, cfg.model).expect("member returns a valid witness");
        }
    }
}

/// An element of the ground lattice `X` of `cfg.model`.
pub fn gen_x(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> TreeFn {
    let full = cfg.model == Model::Full;
    gen_tree(cfg, rng, 0, Shape { inf_cells: false, ramps: full, falling_ramps: full })
}

pub fn gen_x_element(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> SupElement {
    let x = gen_x(cfg, rng);
    SupElement::new(x.clone(), x, cfg.model).expect("elements of X are their own witnesses")
}

/// A cone element `>= 0`.
pub fn gen_positive(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> SupElement {
    let u = fn_pos(gen_element(cfg, rng).u());
    SupElement::new(u, TreeFn::zero(), cfg.model).expect("positive functions dominate 0")
}

/// A finite-valued function with at least one ramp rising to `+inf`.
pub fn gen_rising_ramp_fn(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> TreeFn {
    let depth = rng.random_range(0..=cfg.max_depth.min(3));
    let word: Vec<bool> = (0..depth).map(|_| rng.random_bool(0.5)).collect();
    let len = rng.random_range(0..=2);
    let prefix = (0..len).map(|_| gen_rational(cfg, rng)).collect();
    let ramp = TreeFn::ramp(rng.random_bool(0.5), prefix, gen_poly(rng, false));
    TreeFn::on_cell(&Cell::new(word), ramp, gen_rational(cfg, rng))
}

pub fn gen_cell(rng: &mut ChaCha8Rng, max_depth: usize) -> Cell {
    let depth = rng.random_range(0..=max_depth);
    Cell::new((0..depth).map(|_| rng.random_bool(0.5)).collect())
}

pub fn gen_clopen(rng: &mut ChaCha8Rng) -> ClopenSet {
    let n = rng.random_range(0..=3);
    ClopenSet::normalize((0..n).map(|_| gen_cell(rng, 3)))
}

/// `+inf` on a random cell, `0` elsewhere.
pub fn gen_inf_bump(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> SupElement {
    let set = ClopenSet::cell(gen_cell(rng, cfg.max_depth.clamp(1, 3)));
    let u = fn_indicator(&set, ExtReal::PosInf, ExtReal::zero());
    SupElement::new(u, TreeFn::zero(), cfg.model).expect("positive")
}

/// A flat function with finite or `+inf` values.
pub fn gen_flat(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> FlatFn {
    let depth = rng.random_range(0..=cfg.max_depth.min(3));
    let values = (0..1usize << depth).map(|_| gen_value(cfg, rng, true)).collect();
    FlatFn::new(depth, values).expect("length matches depth")
}

pub fn gen_lambda(rng: &mut ChaCha8Rng) -> ExtReal {
    ExtReal::frac(rng.random_range(0..=6), rng.random_range(1..=3))
}
