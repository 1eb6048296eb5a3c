//! Operads with multiplication and the structure they carry.
//!
//! A carrier only supplies its partial compositions `f ∘ⱼ g`, the identity and
//! the multiplication. Everything else (the full composition γ, braces, the
//! circle product, the dot product, the differential and the Gerstenhaber
//! bracket) is derived here, once, for every carrier.
//!
//! Signs. An element of arity `n` has shifted degree `⟨x⟩ = n - 1`. In a
//! brace `x{x₁,…,x_k}` each insertion contributes `(-1)^{⟨x_p⟩·a_p}` where
//! `a_p` counts the inputs of the result lying strictly before the block of
//! `x_p`. For one argument this is `f ∘ g = Σⱼ (-1)^{(j-1)⟨g⟩} f ∘ⱼ g`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::error::OperadError;
use crate::numkit::{rat, sign, Rat};

/// An element of one arity component, as sparse coordinates over the
/// carrier's basis of that component.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedElem {
    arity: usize,
    coords: BTreeMap<usize, Rat>,
}

impl GradedElem {
    pub fn zero(arity: usize) -> Self {
        Self {
            arity,
            coords: BTreeMap::new(),
        }
    }

    pub fn basis(arity: usize, index: usize) -> Self {
        Self::from_coords(arity, [(index, rat(1))])
    }

    pub fn from_coords(arity: usize, coords: impl IntoIterator<Item = (usize, Rat)>) -> Self {
        let mut e = Self::zero(arity);
        for (i, c) in coords {
            e.add_at(i, &c);
        }
        e
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// `⟨x⟩ = arity - 1`, the degree entering every Koszul sign.
    pub fn shifted_degree(&self) -> i64 {
        self.arity as i64 - 1
    }

    pub fn coords(&self) -> &BTreeMap<usize, Rat> {
        &self.coords
    }

    pub fn get(&self, index: usize) -> Rat {
        self.coords.get(&index).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add_at(&mut self, index: usize, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.coords.entry(index).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.coords.remove(&index);
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Rat) {
        assert_eq!(
            self.arity, other.arity,
            "adding elements of different arity"
        );
        if c.is_zero() {
            return;
        }
        for (&i, v) in &other.coords {
            self.add_at(i, &(v * c));
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        Self {
            arity: self.arity,
            coords: self.coords.iter().map(|(&i, v)| (i, v * c)).collect(),
        }
    }

    /// Multiplies by `(-1)^e`.
    pub fn signed(self, e: i64) -> Self {
        if sign(e) == 1 {
            self
        } else {
            -self
        }
    }

    /// First basis index where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let diff = self - other;
        diff.coords.keys().next().copied()
    }
}

impl fmt::Debug for GradedElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedElem(arity {}; ", self.arity)?;
        let mut first = true;
        for (i, c) in &self.coords {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{i}:{c}")?;
        }
        f.write_str(")")
    }
}

impl Add<&GradedElem> for &GradedElem {
    type Output = GradedElem;
    fn add(self, rhs: &GradedElem) -> GradedElem {
        let mut out = self.clone();
        out.add_scaled(rhs, &rat(1));
        out
    }
}

impl Sub<&GradedElem> for &GradedElem {
    type Output = GradedElem;
    fn sub(self, rhs: &GradedElem) -> GradedElem {
        let mut out = self.clone();
        out.add_scaled(rhs, &rat(-1));
        out
    }
}

impl Neg for GradedElem {
    type Output = GradedElem;
    fn neg(mut self) -> GradedElem {
        for v in self.coords.values_mut() {
            *v = -v.clone();
        }
        self
    }
}

/// A non-Σ operad with a chosen multiplication, presented through partial
/// compositions on finite-dimensional components.
pub trait Operad {
    /// Dimension of the arity-`n` component.
    fn dim(&self, arity: usize) -> usize;

    fn identity(&self) -> GradedElem;

    fn mult(&self) -> GradedElem;

    /// `f ∘ⱼ g` for `1 ≤ j ≤ arity(f)`; arity `arity(f) + arity(g) - 1`.
    fn compose_at(
        &self,
        f: &GradedElem,
        j: usize,
        g: &GradedElem,
    ) -> Result<GradedElem, OperadError>;

    /// Human-readable name of a basis element, used in failure reports.
    fn describe(&self, arity: usize, index: usize) -> Vec<String>;
}

impl<O: Operad + ?Sized> Operad for &O {
    fn dim(&self, arity: usize) -> usize {
        (**self).dim(arity)
    }
    fn identity(&self) -> GradedElem {
        (**self).identity()
    }
    fn mult(&self) -> GradedElem {
        (**self).mult()
    }
    fn compose_at(
        &self,
        f: &GradedElem,
        j: usize,
        g: &GradedElem,
    ) -> Result<GradedElem, OperadError> {
        (**self).compose_at(f, j, g)
    }
    fn describe(&self, arity: usize, index: usize) -> Vec<String> {
        (**self).describe(arity, index)
    }
}

pub(crate) fn check_slot(f: &GradedElem, j: usize) -> Result<(), OperadError> {
    if j == 0 || j > f.arity() {
        Err(OperadError::SlotOutOfRange {
            slot: j,
            arity: f.arity(),
        })
    } else {
        Ok(())
    }
}

/// `γ(f; f₁,…,f_k) = (⋯((f ∘_k f_k) ∘_{k-1} f_{k-1}) ⋯) ∘₁ f₁`, with
/// `γ(x; ) = x` for arity-0 `x`.
pub fn gamma<O: Operad + ?Sized>(
    op: &O,
    f: &GradedElem,
    args: &[GradedElem],
) -> Result<GradedElem, OperadError> {
    if args.len() != f.arity() {
        return Err(OperadError::ArityMismatch {
            expected: f.arity(),
            got: args.len(),
        });
    }
    let mut acc = f.clone();
    for (j, g) in args.iter().enumerate().rev() {
        acc = op.compose_at(&acc, j + 1, g)?;
    }
    Ok(acc)
}

/// Calls `visit` with every strictly increasing `k`-subset of `1..=n`.
fn for_each_slot_choice(n: usize, k: usize, visit: &mut dyn FnMut(&[usize])) {
    fn rec(
        start: usize,
        n: usize,
        k: usize,
        cur: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if cur.len() == k {
            visit(cur);
            return;
        }
        let remaining = k - cur.len();
        for s in start..=n + 1 - remaining {
            cur.push(s);
            rec(s + 1, n, k, cur, visit);
            cur.pop();
        }
    }
    rec(1, n, k, &mut Vec::with_capacity(k), visit);
}

pub fn brace_arity(x: &GradedElem, args: &[GradedElem]) -> usize {
    args.iter().fold(x.arity(), |a, g| a + g.arity() - 1)
}

/// `x{x₁,…,x_k}`: signed sum over all order-preserving insertions of the
/// arguments into distinct slots of `x`.
pub fn brace<O: Operad + ?Sized>(
    op: &O,
    x: &GradedElem,
    args: &[GradedElem],
) -> Result<GradedElem, OperadError> {
    let k = args.len();
    if k > x.arity() {
        return Err(OperadError::TooManyArguments {
            arity: x.arity(),
            args: k,
        });
    }
    if k == 0 {
        return Ok(x.clone());
    }
    let mut out = GradedElem::zero(brace_arity(x, args));
    let mut err = None;
    for_each_slot_choice(x.arity(), k, &mut |slots| {
        if err.is_some() {
            return;
        }
        let mut eps = 0i64;
        let mut consumed = 0usize;
        for (p, (&slot, a)) in slots.iter().zip(args).enumerate() {
            let before = slot - 1 - p + consumed;
            eps += a.shifted_degree() * before as i64;
            consumed += a.arity();
        }
        let mut term = x.clone();
        for (&slot, a) in slots.iter().zip(args).rev() {
            match op.compose_at(&term, slot, a) {
                Ok(t) => term = t,
                Err(e) => {
                    err = Some(e);
                    return;
                }
            }
        }
        out.add_scaled(&term, &rat(sign(eps)));
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Brace that reads as zero when there are more arguments than slots.
pub fn brace_or_zero<O: Operad + ?Sized>(
    op: &O,
    x: &GradedElem,
    args: &[GradedElem],
) -> GradedElem {
    match brace(op, x, args) {
        Ok(v) => v,
        Err(OperadError::TooManyArguments { .. }) => {
            let arity = args
                .iter()
                .fold(x.arity() as i64, |a, g| a + g.shifted_degree());
            GradedElem::zero(arity.max(0) as usize)
        }
        Err(e) => panic!("brace failed: {e}"),
    }
}

/// Circle product `f ∘ g = f{g}`. Zero when `f` has no slots; undefined (no
/// component of arity -1) when both arguments have arity 0.
pub fn circle<O: Operad + ?Sized>(
    op: &O,
    f: &GradedElem,
    g: &GradedElem,
) -> Result<GradedElem, OperadError> {
    if f.arity() == 0 {
        return match g.arity() {
            0 => Err(OperadError::NegativeArity),
            n => Ok(GradedElem::zero(n - 1)),
        };
    }
    brace(op, f, std::slice::from_ref(g))
}

/// `x · y = (-1)^{|x|} m{x, y}`, of arity `|x| + |y|`.
pub fn dot<O: Operad + ?Sized>(op: &O, x: &GradedElem, y: &GradedElem) -> GradedElem {
    let m = op.mult();
    brace(op, &m, &[x.clone(), y.clone()])
        .expect("multiplication has two slots")
        .signed(x.arity() as i64)
}

/// Differential on the shifted complex: `D x = m ∘ x - (-1)^{⟨x⟩} x ∘ m`.
pub fn differential<O: Operad + ?Sized>(op: &O, x: &GradedElem) -> GradedElem {
    let m = op.mult();
    let left = circle(op, &m, x).expect("m has slots");
    let right = circle(op, x, &m).expect("m has positive arity");
    &left - &right.signed(x.shifted_degree())
}

/// Differential of the underlying DGA, `d x = -D x`.
pub fn unshifted_differential<O: Operad + ?Sized>(op: &O, x: &GradedElem) -> GradedElem {
    -differential(op, x)
}

/// Gerstenhaber bracket `[f, g] = f ∘ g - (-1)^{⟨f⟩⟨g⟩} g ∘ f`.
pub fn bracket<O: Operad + ?Sized>(
    op: &O,
    f: &GradedElem,
    g: &GradedElem,
) -> Result<GradedElem, OperadError> {
    let fg = circle(op, f, g)?;
    let gf = circle(op, g, f)?;
    Ok(&fg - &gf.signed(f.shifted_degree() * g.shifted_degree()))
}

/// A shadow carrier whose `∘ⱼ` at one slot has its sign flipped whenever the
/// outer element has at least two slots. Used to check that the verification
/// suites can fail.
pub struct SignFlipped<O> {
    pub inner: O,
    pub slot: usize,
}

impl<O> SignFlipped<O> {
    pub fn new(inner: O) -> Self {
        Self { inner, slot: 1 }
    }
}

impl<O: Operad> Operad for SignFlipped<O> {
    fn dim(&self, arity: usize) -> usize {
        self.inner.dim(arity)
    }
    fn identity(&self) -> GradedElem {
        self.inner.identity()
    }
    fn mult(&self) -> GradedElem {
        self.inner.mult()
    }
    fn compose_at(
        &self,
        f: &GradedElem,
        j: usize,
        g: &GradedElem,
    ) -> Result<GradedElem, OperadError> {
        let r = self.inner.compose_at(f, j, g)?;
        Ok(if j == self.slot && f.arity() >= 2 {
            -r
        } else {
            r
        })
    }
    fn describe(&self, arity: usize, index: usize) -> Vec<String> {
        self.inner.describe(arity, index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slot_choices_are_increasing_subsets() {
        let mut seen = Vec::new();
        for_each_slot_choice(4, 2, &mut |s| seen.push(s.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![1, 2],
                vec![1, 3],
                vec![1, 4],
                vec![2, 3],
                vec![2, 4],
                vec![3, 4]
            ]
        );
        let mut none = 0;
        for_each_slot_choice(2, 3, &mut |_| none += 1);
        assert_eq!(none, 0);
    }

    #[test]
    fn elem_arithmetic_cancels() {
        let a = GradedElem::from_coords(2, [(0, rat(3)), (4, rat(-1))]);
        let b = a.scale(&rat(2));
        let c = &(&a + &a) - &b;
        assert!(c.is_zero());
        assert_eq!(a.first_difference(&b), Some(0));
        assert_eq!(a.clone().signed(3), -a);
    }
}
