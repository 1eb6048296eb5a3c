//! Simplicial cochains on the nerve of a poset as an operad with
//! multiplication.
//!
//! The arity-`n` component has one basis vector per weak `n`-chain, so a
//! cochain is a scalar function on `v₀ ≤ … ≤ vₙ`. Partial composition is
//!
//! ```text
//! (f ∘ⱼ g)(i₀,…,i_{p+q-1}) = f(i₀,…,i_{j-1}, i_{j+q-1},…,i_{p+q-1}) · g(i_{j-1},…,i_{j+q-1})
//! ```
//!
//! and the multiplication `m_S` is the constant 2-cochain 1.

use num_traits::{One, Zero};

use crate::error::OperadError;
use crate::linalg::{self, SparseMat, SparseVec};
use crate::numkit::{rat, sign, Rat};
use crate::opcore::{check_slot, GradedElem, Operad};
use crate::poset::{is_degenerate, ChainMode, Nerve, Poset};

#[derive(Clone, Debug)]
pub struct SimplicialOperad {
    nerve: Nerve,
}

impl SimplicialOperad {
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

    /// Value of a cochain on a weak chain of matching length.
    pub fn value(&self, f: &GradedElem, chain: &[usize]) -> Rat {
        assert_eq!(
            chain.len(),
            f.arity() + 1,
            "chain length does not match degree"
        );
        match self.nerve.weak(f.arity()).index_of(chain) {
            Some(i) => f.get(i),
            None => panic!("{chain:?} is not a weak chain"),
        }
    }

    pub fn from_fn(&self, n: usize, mut value: impl FnMut(&[usize]) -> Rat) -> GradedElem {
        let basis = self.nerve.weak(n);
        GradedElem::from_coords(
            n,
            basis
                .chains()
                .iter()
                .enumerate()
                .map(|(i, c)| (i, value(c))),
        )
    }

    pub fn constant(&self, n: usize, c: &Rat) -> GradedElem {
        self.from_fn(n, |_| c.clone())
    }

    /// The identity (constant-1 1-cochain) and `m_S` (constant-1 2-cochain).
    pub fn constants(&self) -> (GradedElem, GradedElem) {
        (self.identity(), self.mult())
    }

    /// Classical coboundary `(δf)(v) = Σᵢ (-1)^i f(dᵢ v)` on weak chains.
    pub fn alternating_coboundary(&self, f: &GradedElem) -> GradedElem {
        let n = f.arity();
        self.from_fn(n + 1, |chain| {
            (0..=n + 1).fold(Rat::zero(), |acc, i| {
                acc + self.value(f, &face(chain, i)) * rat(sign(i as i64))
            })
        })
    }

    /// Cup product `(x ⌣ y)(v₀,…,v_{p+q}) = x(v₀,…,v_p) · y(v_p,…,v_{p+q})`.
    pub fn cup(&self, x: &GradedElem, y: &GradedElem) -> GradedElem {
        let p = x.arity();
        self.from_fn(p + y.arity(), |chain| {
            self.value(x, &chain[..=p]) * self.value(y, &chain[p..])
        })
    }
}

impl Operad for SimplicialOperad {
    fn dim(&self, arity: usize) -> usize {
        self.nerve.weak(arity).len()
    }

    fn identity(&self) -> GradedElem {
        self.constant(1, &Rat::one())
    }

    fn mult(&self) -> GradedElem {
        self.constant(2, &Rat::one())
    }

    fn compose_at(
        &self,
        f: &GradedElem,
        j: usize,
        g: &GradedElem,
    ) -> Result<GradedElem, OperadError> {
        check_slot(f, j)?;
        let (p, q) = (f.arity(), g.arity());
        let target = self.nerve.weak(p + q - 1);
        let outer_basis = self.nerve.weak(p);
        let inner_basis = self.nerve.weak(q);
        let mut out = GradedElem::zero(p + q - 1);
        if f.is_zero() || g.is_zero() {
            return Ok(out);
        }
        let mut outer = Vec::with_capacity(p + 1);
        for (idx, chain) in target.chains().iter().enumerate() {
            let inner = &chain[j - 1..j + q];
            let gv = match inner_basis.index_of(inner) {
                Some(i) => g.get(i),
                None => continue,
            };
            if gv.is_zero() {
                continue;
            }
            outer.clear();
            outer.extend_from_slice(&chain[..j]);
            outer.extend_from_slice(&chain[j + q - 1..]);
            let fv = f.get(outer_basis.index_of(&outer).expect("outer chain is weak"));
            out.add_at(idx, &(fv * gv));
        }
        Ok(out)
    }

    fn describe(&self, arity: usize, index: usize) -> Vec<String> {
        self.nerve.chain_labels(arity, index)
    }
}

/// `dᵢ`: drop vertex `i`.
pub fn face(chain: &[usize], i: usize) -> Vec<usize> {
    chain
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i)
        .map(|(_, &v)| v)
        .collect()
}

/// Matrix of `δⁿ: Cⁿ → Cⁿ⁺¹` on the chosen basis (rows: `(n+1)`-chains,
/// columns: `n`-chains).
pub fn coboundary_matrix(nerve: &Nerve, n: usize, mode: ChainMode) -> SparseMat {
    let src = nerve.basis(n, mode);
    let dst = nerve.basis(n + 1, mode);
    let mut m = SparseMat::zeros(dst.len(), src.len());
    for (r, chain) in dst.chains().iter().enumerate() {
        for i in 0..=n + 1 {
            let c = src
                .index_of(&face(chain, i))
                .expect("face of a chain is a chain");
            let v = m.get(r, c) + rat(sign(i as i64));
            m.set(r, c, v);
        }
    }
    m
}

/// `dim Hⁿ` for `n = 0..=max_n`.
pub fn simp_cohomology_dims(nerve: &Nerve, max_n: usize, mode: ChainMode) -> Vec<usize> {
    let ranks: Vec<usize> = (0..=max_n)
        .map(|n| linalg::rank(&coboundary_matrix(nerve, n, mode)))
        .collect();
    (0..=max_n)
        .map(|n| {
            let dim = nerve.basis(n, mode).len();
            let prev = if n == 0 { 0 } else { ranks[n - 1] };
            dim - ranks[n] - prev
        })
        .collect()
}

/// Cocycles whose classes form a basis of `Hⁿ`, computed on the normalized
/// complex and returned as weak cochains vanishing on degenerate chains.
pub fn cohomology_representatives(op: &SimplicialOperad, n: usize) -> Vec<GradedElem> {
    let nerve = op.nerve();
    let strict = nerve.basis(n, ChainMode::Strict);
    let (_, kernel) = linalg::rank_kernel(&coboundary_matrix(nerve, n, ChainMode::Strict));
    let image: Vec<SparseVec> = if n == 0 {
        Vec::new()
    } else {
        let prev = coboundary_matrix(nerve, n - 1, ChainMode::Strict).transpose();
        (0..prev.rows()).map(|r| prev.row(r).clone()).collect()
    };
    let kernel: Vec<SparseVec> = kernel.iter().map(|v| linalg::to_sparse(v)).collect();
    linalg::extend_basis(&image, &kernel)
        .into_iter()
        .map(|k| {
            let z = &kernel[k];
            op.from_fn(n, |chain| {
                if is_degenerate(chain) {
                    return Rat::zero();
                }
                let i = strict
                    .index_of(chain)
                    .expect("nondegenerate chain is strict");
                z.get(&i).cloned().unwrap_or_else(Rat::zero)
            })
        })
        .collect()
}
