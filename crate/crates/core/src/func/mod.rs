//! Finitely presented elements of `C(K, [-inf, +inf])`.
//!
//! A [`TreeFn`] is a finite binary tree over the cells of `K` whose leaves are
//! constants or ramps (see [`tree::Ramp`]). Trees are kept canonical: the
//! skeleton splits exactly at the cells where the function is neither
//! constant nor a single ramp, and ramps are rooted as high as possible. Two
//! trees are equal iff they denote the same function.

mod extend;
mod ops;
mod seq;
mod tree;

pub use extend::{extend_from_dense, PartialFn, PartialNode};
pub use ops::{
    classify, fn_add, fn_indicator, fn_inf, fn_join, fn_meet, fn_mul, fn_neg, fn_pos, fn_restrict, fn_scalar, fn_sub,
    fn_sup, Classification,
};
pub use seq::{BinOp, Poly, Seq, Tail};
pub use tree::{align, eval_at, find_point, fn_le, AlignedCell, Leaf, Node, Probe, Ramp, TreeFn};

#[cfg(test)]
mod tests;
