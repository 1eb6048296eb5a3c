//! The incidence algebra `kP` and two Hochschild cochain operads on it.
//!
//! [`RelativeOperad`] is the operad of cochains `kPⁿ → kP` that are balanced
//! over the diagonal subalgebra `S = span{E^{ii}}`. Such a cochain is pinned
//! down by one scalar per weak chain,
//! `f(E^{i₀i₁},…,E^{i_{n-1}iₙ}) = c(i₀,…,iₙ)·E^{i₀iₙ}`, but every operation on
//! it evaluates genuine multilinear maps on algebra elements and reads the
//! coefficients back off the result.
//!
//! [`FullOperad`] is the endomorphism operad `Hom(kPⁿ, kP)` itself, used to
//! compare the relative complex with the ordinary Hochschild complex.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{HochschildError, OperadError};
use crate::linalg::{self, SparseMat, SparseVec};
use crate::numkit::{Rat, TruncSeries};
use crate::opcore::{check_slot, differential, GradedElem, Operad};
use crate::poset::{Interval, Nerve, Poset};

/// Coefficient ring of an incidence-algebra element.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Whether two values live in the same ring (same truncation order).
    fn compatible(&self, other: &Self) -> bool;
}

impl Scalar for Rat {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn compatible(&self, _: &Self) -> bool {
        true
    }
}

impl Scalar for TruncSeries {
    fn is_zero(&self) -> bool {
        TruncSeries::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        TruncSeries::add(self, other).expect("orders checked by caller")
    }
    fn mul(&self, other: &Self) -> Self {
        TruncSeries::mul(self, other).expect("orders checked by caller")
    }
    fn compatible(&self, other: &Self) -> bool {
        self.order() == other.order()
    }
}

/// Sparse element `Σ r_{ij} E^{ij}` of the incidence algebra.
#[derive(Clone, PartialEq)]
pub struct IncElem<S> {
    terms: BTreeMap<Interval, S>,
}

impl<S: Scalar> IncElem<S> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(lo: usize, hi: usize, c: S) -> Self {
        let mut e = Self::zero();
        e.add_term(Interval { lo, hi }, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Interval, S)>) -> Self {
        let mut e = Self::zero();
        for (iv, c) in terms {
            e.add_term(iv, c);
        }
        e
    }

    pub fn terms(&self) -> &BTreeMap<Interval, S> {
        &self.terms
    }

    pub fn coeff(&self, lo: usize, hi: usize) -> Option<&S> {
        self.terms.get(&Interval { lo, hi })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, iv: Interval, c: S) {
        if c.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&iv) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(iv, merged);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, HochschildError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (&iv, c) in &other.terms {
            out.add_term(iv, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.terms.iter().map(|(&iv, v)| (iv, v.mul(c))))
    }

    fn any_scalar(&self) -> Option<&S> {
        self.terms.values().next()
    }

    fn check_ring(&self, other: &Self) -> Result<(), HochschildError> {
        match (self.any_scalar(), other.any_scalar()) {
            (Some(a), Some(b)) if !a.compatible(b) => Err(HochschildError::RingMismatch),
            _ => Ok(()),
        }
    }

    /// Product extending `E^{ij} · E^{jk} = E^{ik}` bilinearly; products of
    /// non-composable basis elements vanish.
    pub fn mul(&self, other: &Self) -> Result<Self, HochschildError> {
        self.check_ring(other)?;
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in other.terms.range(Interval { lo: a.hi, hi: 0 }..) {
                if b.lo != a.hi {
                    break;
                }
                out.add_term(Interval { lo: a.lo, hi: b.hi }, x.mul(y));
            }
        }
        Ok(out)
    }
}

impl IncElem<Rat> {
    /// The unit `Σᵢ E^{ii}`.
    pub fn unit(poset: &Poset) -> Self {
        Self::from_terms((0..poset.len()).map(|i| (Interval { lo: i, hi: i }, Rat::one())))
    }
}

impl<S: fmt::Debug> fmt::Debug for IncElem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (iv, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c:?}·E[{},{}]", iv.lo, iv.hi)?;
        }
        Ok(())
    }
}

/// `inc_mul`: the incidence-algebra product.
pub fn inc_mul<S: Scalar>(a: &IncElem<S>, b: &IncElem<S>) -> Result<IncElem<S>, HochschildError> {
    a.mul(b)
}

/// Evaluates the multilinear extension of a chain-coefficient cochain:
/// `(E^{i₀i₁},…,E^{i_{n-1}iₙ}) ↦ coeff(i₀,…,iₙ)·E^{i₀iₙ}`, zero on
/// non-composable tuples.
pub fn eval_chain_cochain<S: Scalar>(
    coeff: &dyn Fn(&[usize]) -> Option<S>,
    args: &[IncElem<S>],
) -> Result<IncElem<S>, HochschildError> {
    if args.is_empty() {
        return Err(HochschildError::EmptyArguments);
    }
    let mut reference: Option<&S> = None;
    for a in args {
        for v in a.terms.values() {
            match reference {
                Some(r) if !r.compatible(v) => return Err(HochschildError::RingMismatch),
                None => reference = Some(v),
                _ => {}
            }
        }
    }
    let mut out = IncElem::zero();
    let mut chain = Vec::with_capacity(args.len() + 1);
    let mut scalars: Vec<&S> = Vec::with_capacity(args.len());
    fn rec<'a, S: Scalar>(
        args: &'a [IncElem<S>],
        coeff: &dyn Fn(&[usize]) -> Option<S>,
        chain: &mut Vec<usize>,
        scalars: &mut Vec<&'a S>,
        out: &mut IncElem<S>,
    ) {
        let k = scalars.len();
        if k == args.len() {
            if let Some(c) = coeff(chain) {
                let v = scalars.iter().fold(c, |acc, s| acc.mul(s));
                out.add_term(
                    Interval {
                        lo: chain[0],
                        hi: chain[k],
                    },
                    v,
                );
            }
            return;
        }
        for (iv, s) in &args[k].terms {
            if k > 0 && iv.lo != chain[k] {
                continue;
            }
            if k == 0 {
                chain.push(iv.lo);
            }
            chain.push(iv.hi);
            scalars.push(s);
            rec(args, coeff, chain, scalars, out);
            scalars.pop();
            chain.pop();
            if k == 0 {
                chain.pop();
            }
        }
    }
    rec(args, coeff, &mut chain, &mut scalars, &mut out);
    Ok(out)
}

/// Relative Hochschild cochains `C^•(kP, S; kP)`, indexed like the nerve's
/// weak chains.
#[derive(Clone, Debug)]
pub struct RelativeOperad {
    nerve: Nerve,
}

impl RelativeOperad {
    pub fn new(poset: Poset) -> Self {
        Self::from_nerve(Nerve::new(poset))
    }

    pub fn from_nerve(nerve: Nerve) -> Self {
        Self { nerve }
    }

    pub fn nerve(&self) -> &Nerve {
        &self.nerve
    }

    pub fn poset(&self) -> &Poset {
        self.nerve.poset()
    }

    /// The relative cochain with the given coefficient on each weak chain.
    pub fn from_coefficients(
        &self,
        n: usize,
        mut coeff: impl FnMut(&[usize]) -> Rat,
    ) -> GradedElem {
        let basis = self.nerve.weak(n);
        GradedElem::from_coords(
            n,
            basis
                .chains()
                .iter()
                .enumerate()
                .map(|(i, c)| (i, coeff(c))),
        )
    }

    pub fn coefficient(&self, f: &GradedElem, chain: &[usize]) -> Rat {
        self.nerve
            .weak(f.arity())
            .index_of(chain)
            .map(|i| f.get(i))
            .unwrap_or_else(Rat::zero)
    }

    /// A degree-0 cochain as the diagonal algebra element `Σ c(i) E^{ii}`.
    pub fn as_element(&self, f: &GradedElem) -> IncElem<Rat> {
        assert_eq!(f.arity(), 0, "only degree-0 cochains are algebra elements");
        let basis = self.nerve.weak(0);
        IncElem::from_terms(f.coords().iter().map(|(&i, c)| {
            let v = basis.chain(i)[0];
            (Interval { lo: v, hi: v }, c.clone())
        }))
    }

    /// `rel_eval`: the multilinear map `f` applied to algebra elements.
    pub fn rel_eval(
        &self,
        f: &GradedElem,
        args: &[IncElem<Rat>],
    ) -> Result<IncElem<Rat>, HochschildError> {
        let basis = self.nerve.weak(f.arity());
        if args.len() != f.arity() {
            return Err(HochschildError::ArgumentCount {
                expected: f.arity(),
                got: args.len(),
            });
        }
        let coeff = |chain: &[usize]| -> Option<Rat> {
            basis
                .index_of(chain)
                .and_then(|i| f.coords().get(&i).cloned())
        };
        eval_chain_cochain(&coeff, args)
    }

    /// Value of `f` on arguments, treating arity 0 as the element itself.
    fn apply(&self, f: &GradedElem, args: &[IncElem<Rat>]) -> IncElem<Rat> {
        if f.arity() == 0 {
            self.as_element(f)
        } else {
            self.rel_eval(f, args).expect("rational arguments")
        }
    }

    /// Reads coefficients back from the values of a map on the basis tuples
    /// `(E^{i₀i₁},…)` of every weak `n`-chain.
    fn extract(
        &self,
        n: usize,
        mut value_on: impl FnMut(&[IncElem<Rat>], &[usize]) -> IncElem<Rat>,
    ) -> GradedElem {
        let basis = self.nerve.weak(n);
        let mut out = GradedElem::zero(n);
        let mut args = Vec::with_capacity(n);
        for (idx, chain) in basis.chains().iter().enumerate() {
            args.clear();
            args.extend(
                chain
                    .windows(2)
                    .map(|w| IncElem::basis(w[0], w[1], Rat::one())),
            );
            let v = value_on(&args, chain);
            let (lo, hi) = (chain[0], chain[n]);
            // In arity 0 the value is a diagonal element; read its entry at the vertex.
            debug_assert!(
                n == 0 || v.terms().keys().all(|iv| iv.lo == lo && iv.hi == hi),
                "value {v:?} on {chain:?} is not relative"
            );
            if let Some(c) = v.coeff(lo, hi) {
                out.add_at(idx, c);
            }
        }
        out
    }
}

impl Operad for RelativeOperad {
    fn dim(&self, arity: usize) -> usize {
        self.nerve.weak(arity).len()
    }

    fn identity(&self) -> GradedElem {
        self.extract(1, |args, _| args[0].clone())
    }

    /// `m_H(a₁, a₂) = a₁a₂`.
    fn mult(&self) -> GradedElem {
        self.extract(2, |args, _| inc_mul(&args[0], &args[1]).expect("rational"))
    }

    /// Inserts the value of `g` on the middle arguments into `f`, all by
    /// evaluation in `kP`.
    fn compose_at(
        &self,
        f: &GradedElem,
        j: usize,
        g: &GradedElem,
    ) -> Result<GradedElem, OperadError> {
        check_slot(f, j)?;
        let (p, q) = (f.arity(), g.arity());
        if f.is_zero() || g.is_zero() {
            return Ok(GradedElem::zero(p + q - 1));
        }
        let mut outer_args = Vec::with_capacity(p);
        Ok(self.extract(p + q - 1, |args, _| {
            let inner = self.apply(g, &args[j - 1..j - 1 + q]);
            if inner.is_zero() {
                return IncElem::zero();
            }
            outer_args.clear();
            outer_args.extend_from_slice(&args[..j - 1]);
            outer_args.push(inner);
            outer_args.extend_from_slice(&args[j - 1 + q..]);
            self.rel_eval(f, &outer_args).expect("rational")
        }))
    }

    fn describe(&self, arity: usize, index: usize) -> Vec<String> {
        self.nerve.chain_labels(arity, index)
    }
}

/// The full Hochschild cochain operad `End_{kP}`. A basis element of arity
/// `n` is a tuple of `n` intervals together with an output interval: the map
/// sending that tuple of basis elements to the output and every other tuple
/// to zero.
#[derive(Clone, Debug)]
pub struct FullOperad {
    poset: Poset,
    intervals: Vec<Interval>,
    index: HashMap<Interval, usize>,
    /// `product[a][b]` is the index of `E^a · E^b` when composable.
    product: Vec<Vec<Option<usize>>>,
}

impl FullOperad {
    pub fn new(poset: Poset) -> Self {
        let intervals = poset.intervals();
        let index: HashMap<Interval, usize> = intervals
            .iter()
            .enumerate()
            .map(|(i, &iv)| (iv, i))
            .collect();
        let product = intervals
            .iter()
            .map(|a| {
                intervals
                    .iter()
                    .map(|b| (a.hi == b.lo).then(|| index[&Interval { lo: a.lo, hi: b.hi }]))
                    .collect()
            })
            .collect();
        Self {
            poset,
            intervals,
            index,
            product,
        }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn interval_index(&self, iv: Interval) -> Option<usize> {
        self.index.get(&iv).copied()
    }

    fn m(&self) -> usize {
        self.intervals.len()
    }

    pub fn encode(&self, tuple: &[usize], out: usize) -> usize {
        let m = self.m();
        tuple.iter().fold(0, |acc, &t| acc * m + t) * m + out
    }

    pub fn decode(&self, arity: usize, code: usize) -> (Vec<usize>, usize) {
        let m = self.m();
        let out = code % m;
        let mut rest = code / m;
        let mut tuple = vec![0; arity];
        for slot in tuple.iter_mut().rev() {
            *slot = rest % m;
            rest /= m;
        }
        (tuple, out)
    }

    /// Evaluates a full cochain on algebra elements.
    pub fn eval(&self, f: &GradedElem, args: &[IncElem<Rat>]) -> IncElem<Rat> {
        assert_eq!(args.len(), f.arity());
        let mut out = IncElem::zero();
        for (&code, c) in f.coords() {
            let (tuple, o) = self.decode(f.arity(), code);
            let mut v = c.clone();
            for (t, a) in tuple.iter().zip(args) {
                match a.terms().get(&self.intervals[*t]) {
                    Some(s) => v *= s,
                    None => {
                        v = Rat::zero();
                        break;
                    }
                }
            }
            out.add_term(self.intervals[o], v);
        }
        out
    }

    /// The inclusion of relative cochains into all cochains.
    pub fn include(&self, rel: &RelativeOperad, f: &GradedElem) -> GradedElem {
        let n = f.arity();
        let basis = rel.nerve().weak(n);
        GradedElem::from_coords(
            n,
            f.coords().iter().map(|(&i, c)| {
                let chain = basis.chain(i);
                let tuple: Vec<usize> = chain
                    .windows(2)
                    .map(|w| self.index[&Interval { lo: w[0], hi: w[1] }])
                    .collect();
                let out = self.index[&Interval {
                    lo: chain[0],
                    hi: chain[n],
                }];
                (self.encode(&tuple, out), c.clone())
            }),
        )
    }

    /// Whether `f` satisfies the three balancing identities over `S` on all
    /// basis tuples.
    pub fn is_relative(&self, f: &GradedElem) -> bool {
        let n = f.arity();
        let verts = self.poset.len();
        let basis_elems: Vec<IncElem<Rat>> = self
            .intervals
            .iter()
            .map(|iv| IncElem::basis(iv.lo, iv.hi, Rat::one()))
            .collect();
        let idempotents: Vec<IncElem<Rat>> = (0..verts)
            .map(|v| IncElem::basis(v, v, Rat::one()))
            .collect();
        if n == 0 {
            let a = self.eval(f, &[]);
            return idempotents
                .iter()
                .all(|b| b.mul(&a).unwrap() == a.mul(b).unwrap());
        }
        let total = self.m().pow(n as u32);
        for code in 0..total {
            let (tuple, _) = self.decode(n, code * self.m());
            let args: Vec<IncElem<Rat>> = tuple.iter().map(|&t| basis_elems[t].clone()).collect();
            let value = self.eval(f, &args);
            for b in &idempotents {
                let mut left = args.clone();
                left[0] = b.mul(&args[0]).unwrap();
                if self.eval(f, &left) != b.mul(&value).unwrap() {
                    return false;
                }
                let mut right = args.clone();
                right[n - 1] = args[n - 1].mul(b).unwrap();
                if self.eval(f, &right) != value.mul(b).unwrap() {
                    return false;
                }
                for i in 0..n - 1 {
                    let mut x = args.clone();
                    x[i] = args[i].mul(b).unwrap();
                    let mut y = args.clone();
                    y[i + 1] = b.mul(&args[i + 1]).unwrap();
                    if self.eval(f, &x) != self.eval(f, &y) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl Operad for FullOperad {
    fn dim(&self, arity: usize) -> usize {
        self.m().pow(arity as u32 + 1)
    }

    fn identity(&self) -> GradedElem {
        GradedElem::from_coords(1, (0..self.m()).map(|i| (self.encode(&[i], i), Rat::one())))
    }

    fn mult(&self) -> GradedElem {
        let mut out = GradedElem::zero(2);
        for a in 0..self.m() {
            for b in 0..self.m() {
                if let Some(c) = self.product[a][b] {
                    out.add_at(self.encode(&[a, b], c), &Rat::one());
                }
            }
        }
        out
    }

    /// By multilinearity: each basis map of `g` lands on one interval, which
    /// must match what the basis map of `f` expects in slot `j`.
    fn compose_at(
        &self,
        f: &GradedElem,
        j: usize,
        g: &GradedElem,
    ) -> Result<GradedElem, OperadError> {
        check_slot(f, j)?;
        let (p, q) = (f.arity(), g.arity());
        let mut out = GradedElem::zero(p + q - 1);
        let g_terms: Vec<(Vec<usize>, usize, &Rat)> = g
            .coords()
            .iter()
            .map(|(&code, c)| {
                let (t, o) = self.decode(q, code);
                (t, o, c)
            })
            .collect();
        let mut tuple = Vec::with_capacity(p + q - 1);
        for (&code, cf) in f.coords() {
            let (ft, fo) = self.decode(p, code);
            for (gt, go, cg) in &g_terms {
                if ft[j - 1] != *go {
                    continue;
                }
                tuple.clear();
                tuple.extend_from_slice(&ft[..j - 1]);
                tuple.extend_from_slice(gt);
                tuple.extend_from_slice(&ft[j..]);
                out.add_at(self.encode(&tuple, fo), &(cf * *cg));
            }
        }
        Ok(out)
    }

    fn describe(&self, arity: usize, index: usize) -> Vec<String> {
        let (tuple, out) = self.decode(arity, index);
        let name = |i: usize| {
            let iv = self.intervals[i];
            format!("E[{},{}]", self.poset.label(iv.lo), self.poset.label(iv.hi))
        };
        tuple
            .into_iter()
            .map(name)
            .chain(std::iter::once(format!("-> {}", name(out))))
            .collect()
    }
}

/// `full_differential`: `d f = [m_H, f]` on the full complex.
pub fn full_differential(op: &FullOperad, f: &GradedElem) -> GradedElem {
    let m = op.mult();
    crate::opcore::bracket(op, &m, f).expect("m has arity 2")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HochschildComplex {
    Full,
    Relative,
}

/// Largest cochain space the full complex is allowed to build.
pub const FULL_COMPLEX_LIMIT: usize = 10_000;

/// Matrix of the (shifted) differential `C^n → C^{n+1}` of a carrier, built
/// column by column from basis elements.
pub fn differential_matrix<O: Operad + ?Sized>(op: &O, n: usize) -> SparseMat {
    let cols: Vec<SparseVec> = (0..op.dim(n))
        .map(|i| differential(op, &GradedElem::basis(n, i)).coords().clone())
        .collect();
    SparseMat::from_columns(op.dim(n + 1), &cols)
}

fn dims_from_carrier<O: Operad + ?Sized>(op: &O, max_n: usize) -> Vec<usize> {
    let ranks: Vec<usize> = (0..=max_n)
        .map(|n| linalg::rank(&differential_matrix(op, n)))
        .collect();
    (0..=max_n)
        .map(|n| op.dim(n) - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] })
        .collect()
}

/// `dim HHⁿ` for `n = 0..=max_n` of the chosen Hochschild complex.
pub fn hh_dims(
    poset: &Poset,
    max_n: usize,
    which: HochschildComplex,
) -> Result<Vec<usize>, HochschildError> {
    match which {
        HochschildComplex::Relative => Ok(dims_from_carrier(
            &RelativeOperad::new(poset.clone()),
            max_n,
        )),
        HochschildComplex::Full => {
            let m = poset.intervals().len();
            let needed = (m as u128).pow(max_n as u32 + 2);
            if needed > FULL_COMPLEX_LIMIT as u128 {
                return Err(HochschildError::TooLarge {
                    max_n,
                    tuples: usize::try_from(needed).unwrap_or(usize::MAX),
                    limit: FULL_COMPLEX_LIMIT,
                });
            }
            Ok(dims_from_carrier(&FullOperad::new(poset.clone()), max_n))
        }
    }
}
