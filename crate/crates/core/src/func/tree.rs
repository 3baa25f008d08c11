use std::fmt;

use crate::error::{Error, Result};
use crate::extreal::ExtReal;
use crate::stone::{BranchPoint, Cell};

use super::seq::{Poly, Seq, Tail};

/// A ramp on a cell `[w]` in direction `b`: subcell `[w·b^k·(1-b)]` carries the
/// constant `r(k)` and the branch point `w·b^ω` carries `lim r(k)`.
///
/// Ramps stored in a [`TreeFn`] are always singular (their tail polynomial
/// has degree at least one), so the branch value is `±inf`. Eventually
/// constant sequences are expanded into ordinary splits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ramp {
    dir: bool,
    seq: Seq,
}

impl Ramp {
    pub fn dir(&self) -> bool {
        self.dir
    }

    pub fn seq(&self) -> &Seq {
        &self.seq
    }

    /// Value at the ramp's branch point.
    pub fn limit(&self) -> ExtReal {
        self.seq.limit()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Leaf {
    Const(ExtReal),
    Ramp(Ramp),
}

impl Leaf {
    /// The leaf as a sequence along direction `dir`.
    pub fn seq_along(&self, dir: bool) -> Option<Seq> {
        match self {
            Leaf::Const(v) => Some(Seq::constant(v)),
            Leaf::Ramp(r) if r.dir == dir => Some(r.seq.clone()),
            Leaf::Ramp(_) => None,
        }
    }

    pub fn dir(&self) -> Option<bool> {
        match self {
            Leaf::Const(_) => None,
            Leaf::Ramp(r) => Some(r.dir),
        }
    }

    /// One-level unfolding into the two child cells.
    pub fn children(&self) -> (Node, Node) {
        match self {
            Leaf::Const(v) => (Node::constant(v.clone()), Node::constant(v.clone())),
            Leaf::Ramp(r) => {
                let off = Node::constant(r.seq.value(0));
                let on = Node::ramp(r.dir, r.seq.advance());
                if r.dir {
                    (off, on)
                } else {
                    (on, off)
                }
            }
        }
    }
}

/// A node of a canonical tree. Construct through [`Node::constant`],
/// [`Node::ramp`] and [`Node::split`], which keep the tree canonical provided
/// the children are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Leaf(Leaf),
    Split(Box<Node>, Box<Node>),
}

impl Node {
    pub fn constant(v: ExtReal) -> Node {
        Node::Leaf(Leaf::Const(v))
    }

    /// A ramp leaf, or its expansion into splits when the sequence is
    /// eventually constant.
    pub fn ramp(dir: bool, seq: Seq) -> Node {
        if seq.is_singular() {
            return Node::Leaf(Leaf::Ramp(Ramp { dir, seq }));
        }
        fn chain(dir: bool, seq: &Seq, k: usize) -> Node {
            if k >= seq.start() {
                return Node::constant(seq.value(k));
            }
            let off = Node::constant(seq.value(k));
            let on = chain(dir, seq, k + 1);
            if dir {
                Node::split(off, on)
            } else {
                Node::split(on, off)
            }
        }
        chain(dir, &seq, 0)
    }

    pub fn split(a: Node, b: Node) -> Node {
        match (a, b) {
            (Node::Leaf(Leaf::Const(x)), Node::Leaf(Leaf::Const(y))) if x == y => Node::Leaf(Leaf::Const(x)),
            (Node::Leaf(Leaf::Const(c)), Node::Leaf(Leaf::Ramp(r))) if r.dir => {
                Node::Leaf(Leaf::Ramp(Ramp { dir: true, seq: r.seq.prepend(c) }))
            }
            (Node::Leaf(Leaf::Ramp(r)), Node::Leaf(Leaf::Const(c))) if !r.dir => {
                Node::Leaf(Leaf::Ramp(Ramp { dir: false, seq: r.seq.prepend(c) }))
            }
            (a, b) => Node::Split(Box::new(a), Box::new(b)),
        }
    }

    fn children(&self) -> (Node, Node) {
        match self {
            Node::Split(a, b) => ((**a).clone(), (**b).clone()),
            Node::Leaf(l) => l.children(),
        }
    }

    fn depth(&self) -> usize {
        match self {
            Node::Leaf(_) => 0,
            Node::Split(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

/// A finitely presented continuous function `K → [-inf, +inf]`, always in
/// canonical form, so `==` is equality of functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeFn {
    root: Node,
}

impl TreeFn {
    pub fn constant(v: ExtReal) -> Self {
        TreeFn { root: Node::constant(v) }
    }

    pub fn zero() -> Self {
        Self::constant(ExtReal::zero())
    }

    pub fn one() -> Self {
        Self::constant(ExtReal::one())
    }

    pub fn split(a: TreeFn, b: TreeFn) -> Self {
        TreeFn { root: Node::split(a.root, b.root) }
    }

    /// `r(k) = prefix[k]` for `k < prefix.len()` and `poly(k)` afterwards.
    pub fn ramp(dir: bool, prefix: Vec<ExtReal>, poly: Poly) -> Self {
        TreeFn { root: Node::ramp(dir, Seq::new(prefix, Tail::Poly(poly))) }
    }

    pub fn from_node(root: Node) -> Self {
        TreeFn { root }
    }

    /// Places `f` on `cell` and `fill` everywhere else.
    pub fn on_cell(cell: &Cell, f: TreeFn, fill: ExtReal) -> Self {
        let mut node = f.root;
        for &bit in cell.word().iter().rev() {
            let other = Node::constant(fill.clone());
            node = if bit { Node::split(other, node) } else { Node::split(node, other) };
        }
        TreeFn { root: node }
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    /// Depth of the splitting skeleton (ramps count as leaves).
    pub fn depth(&self) -> usize {
        self.root.depth()
    }

    /// All leaves with the cells they occupy, left to right.
    pub fn leaves(&self) -> Vec<(Cell, &Leaf)> {
        fn go<'a>(n: &'a Node, cell: Cell, out: &mut Vec<(Cell, &'a Leaf)>) {
            match n {
                Node::Leaf(l) => out.push((cell, l)),
                Node::Split(a, b) => {
                    go(a, cell.child(false), out);
                    go(b, cell.child(true), out);
                }
            }
        }
        let mut out = Vec::new();
        go(&self.root, Cell::root(), &mut out);
        out
    }

    pub fn has_ramps(&self) -> bool {
        self.leaves().iter().any(|(_, l)| matches!(l, Leaf::Ramp(_)))
    }

    /// Branch points where the function is not locally constant, with their
    /// (infinite) values.
    pub fn singular_points(&self) -> Vec<(BranchPoint, ExtReal)> {
        self.leaves()
            .into_iter()
            .filter_map(|(c, l)| match l {
                Leaf::Ramp(r) => Some((c.branch(r.dir), r.limit())),
                Leaf::Const(_) => None,
            })
            .collect()
    }

    /// Every value the function takes on a cell or subcell, plus ramp limits.
    pub fn leaf_values(&self) -> Vec<ExtReal> {
        let mut out = Vec::new();
        for (_, l) in self.leaves() {
            match l {
                Leaf::Const(v) => out.push(v.clone()),
                Leaf::Ramp(r) => {
                    out.extend(r.seq.prefix().iter().cloned());
                    out.push(r.seq.tail().value(r.seq.start()));
                    out.push(r.limit());
                }
            }
        }
        out
    }

    pub fn map_leaves(&self, f: &impl Fn(&Leaf) -> Node) -> TreeFn {
        fn go(n: &Node, f: &impl Fn(&Leaf) -> Node) -> Node {
            match n {
                Node::Leaf(l) => f(l),
                Node::Split(a, b) => Node::split(go(a, f), go(b, f)),
            }
        }
        TreeFn { root: go(&self.root, f) }
    }

    /// Value at a branch point; at a ramp's own branch point this is the
    /// ramp's limit.
    pub fn eval_point(&self, p: &BranchPoint) -> ExtReal {
        let mut node = &self.root;
        let mut i = 0;
        loop {
            match node {
                Node::Split(a, b) => {
                    node = if p.bit(i) { b } else { a };
                    i += 1;
                }
                Node::Leaf(Leaf::Const(v)) => return v.clone(),
                Node::Leaf(Leaf::Ramp(r)) => {
                    let mut j = i;
                    while j < p.prefix().len() && p.bit(j) == r.dir {
                        j += 1;
                    }
                    if j >= p.prefix().len() && p.tail() == r.dir {
                        return r.limit();
                    }
                    return r.seq.value(j - i);
                }
            }
        }
    }

    /// Value on a cell, provided the function is constant there.
    pub fn eval_cell(&self, cell: &Cell) -> Result<ExtReal> {
        let word = cell.word();
        let mut node = &self.root;
        let mut i = 0;
        loop {
            match node {
                Node::Leaf(Leaf::Const(v)) => return Ok(v.clone()),
                Node::Leaf(Leaf::Ramp(r)) => {
                    let mut j = i;
                    while j < word.len() && word[j] == r.dir {
                        j += 1;
                    }
                    if j == word.len() {
                        return Err(Error::CellNotResolved(cell.clone()));
                    }
                    return Ok(r.seq.value(j - i));
                }
                Node::Split(a, b) => {
                    if i == word.len() {
                        return Err(Error::CellNotResolved(cell.clone()));
                    }
                    node = if word[i] { b } else { a };
                    i += 1;
                }
            }
        }
    }
}

/// A point that can be evaluated: a cell on which the function is constant,
/// or a branch point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Probe {
    Cell(Cell),
    Branch(BranchPoint),
}

pub fn eval_at(u: &TreeFn, p: &Probe) -> Result<ExtReal> {
    match p {
        Probe::Cell(c) => u.eval_cell(c),
        Probe::Branch(b) => Ok(u.eval_point(b)),
    }
}

/// Leaves of two functions over a common cell, with ramp directions agreeing
/// whenever both are ramps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignedCell {
    pub cell: Cell,
    pub left: Leaf,
    pub right: Leaf,
}

impl AlignedCell {
    /// Common direction of the pair, if either is a ramp.
    pub fn dir(&self) -> Option<bool> {
        self.left.dir().or(self.right.dir())
    }

    /// Both leaves as sequences along the common direction.
    pub fn seqs(&self) -> (bool, Seq, Seq) {
        let dir = self.dir().unwrap_or(false);
        (dir, self.left.seq_along(dir).expect("aligned"), self.right.seq_along(dir).expect("aligned"))
    }
}

/// Walks two trees over their common refinement, unfolding leaves against
/// splits and opposite-direction ramps one level at a time.
pub(crate) fn pair_fold<T>(
    a: &Node,
    b: &Node,
    cell: &Cell,
    leaf: &mut impl FnMut(AlignedCell) -> Result<T>,
    join: &impl Fn(T, T) -> T,
) -> Result<T> {
    let needs_split = match (a, b) {
        (Node::Split(..), _) | (_, Node::Split(..)) => true,
        (Node::Leaf(x), Node::Leaf(y)) => matches!((x.dir(), y.dir()), (Some(d), Some(e)) if d != e),
    };
    if needs_split {
        let (a0, a1) = a.children();
        let (b0, b1) = b.children();
        let left = pair_fold(&a0, &b0, &cell.child(false), leaf, join)?;
        let right = pair_fold(&a1, &b1, &cell.child(true), leaf, join)?;
        return Ok(join(left, right));
    }
    match (a, b) {
        (Node::Leaf(x), Node::Leaf(y)) => leaf(AlignedCell { cell: cell.clone(), left: x.clone(), right: y.clone() }),
        _ => unreachable!(),
    }
}

/// Both functions on a common refinement of their skeletons.
pub fn align(u: &TreeFn, v: &TreeFn) -> Vec<AlignedCell> {
    pair_fold(&u.root, &v.root, &Cell::root(), &mut |c| Ok(vec![c]), &|mut l, r| {
        l.extend(r);
        l
    })
    .expect("alignment is total")
}

/// The first point (in tree order) at which `pred(u(p), v(p))` holds.
///
/// Each aligned cell is constant on every ramp subcell, so testing one point
/// per subcell up to the index where the two tails stop crossing, plus the
/// branch point itself, covers every point of the cell.
pub fn find_point(u: &TreeFn, v: &TreeFn, pred: impl Fn(&ExtReal, &ExtReal) -> bool) -> Option<BranchPoint> {
    let mut first = None;
    let _ = pair_fold(
        &u.root,
        &v.root,
        &Cell::root(),
        &mut |ac: AlignedCell| {
            if first.is_some() {
                return Ok(());
            }
            let (dir, s, t) = ac.seqs();
            if ac.dir().is_none() {
                if pred(&s.value(0), &t.value(0)) {
                    first = Some(ac.cell.branch(false));
                }
                return Ok(());
            }
            let base = s.start().max(t.start());
            let stable = match (s.tail(), t.tail()) {
                (Tail::Poly(p), Tail::Poly(q)) => base.max(p.sub(q).crossover()),
                _ => base,
            };
            for k in 0..=stable {
                if pred(&s.value(k), &t.value(k)) {
                    first = Some(ac.cell.extend(dir, k).child(!dir).branch(false));
                    return Ok(());
                }
            }
            if pred(&s.limit(), &t.limit()) {
                first = Some(ac.cell.branch(dir));
            }
            Ok(())
        },
        &|_, _| (),
    );
    first
}

/// Pointwise order `u <= v`, decided exactly.
pub fn fn_le(u: &TreeFn, v: &TreeFn) -> bool {
    find_point(u, v, |a, b| a > b).is_none()
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Leaf(Leaf::Const(v)) => write!(f, "const {v}"),
            Node::Leaf(Leaf::Ramp(r)) => {
                write!(f, "ramp({}; ", if r.dir { 1 } else { 0 })?;
                for (i, v) in r.seq.prefix().iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{v}")?;
                }
                match r.seq.tail() {
                    Tail::Poly(q) => write!(f, "; {q})"),
                    // unreachable for canonical ramps
                    t => write!(f, "; {})", t.value(0)),
                }
            }
            Node::Split(a, b) => write!(f, "split({a}, {b})"),
        }
    }
}

impl fmt::Display for TreeFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}
