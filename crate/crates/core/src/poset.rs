//! Finite posets and the chain/interval bases built from them.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::error::PosetError;

/// A weakly increasing sequence of element indices `v₀ ≤ … ≤ vₙ`; an
/// `n`-simplex of the nerve.
pub type Chain = Vec<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainMode {
    /// All weakly increasing chains (the full nerve).
    Weak,
    /// Strictly increasing chains only (the normalized basis).
    Strict,
}

/// The pair `lo ≤ hi`, i.e. the basis element `E^{lo,hi}` of the incidence
/// algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    name: String,
    labels: Vec<String>,
    leq: Vec<bool>,
}

impl Poset {
    /// Builds the reflexive-transitive closure of `pairs` (each `(a, b)`
    /// meaning `a ≤ b`) and rejects it if antisymmetry fails.
    pub fn from_relations<S: AsRef<str>>(
        labels: &[S],
        pairs: &[(S, S)],
    ) -> Result<Self, PosetError> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_str(), i).is_some() {
                return Err(PosetError::DuplicateElement(l.clone()));
            }
        }
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (a, b) in pairs {
            let lookup = |s: &S| {
                index
                    .get(s.as_ref())
                    .copied()
                    .ok_or_else(|| PosetError::UnknownElement(s.as_ref().to_string()))
            };
            let (i, j) = (lookup(a)?, lookup(b)?);
            leq[i * n + j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if !leq[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(PosetError::CycleDetected(
                        labels[i].clone(),
                        labels[j].clone(),
                    ));
                }
            }
        }
        Ok(Self {
            name: String::new(),
            labels,
            leq,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// Strict relations that are not implied by transitivity.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt(i, j) && !(0..n).any(|k| self.lt(i, k) && self.lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Every pair `i ≤ j`, ordered lexicographically by `(i, j)`.
    pub fn intervals(&self) -> Vec<Interval> {
        let n = self.len();
        (0..n)
            .flat_map(|lo| (0..n).map(move |hi| Interval { lo, hi }))
            .filter(|iv| self.leq(iv.lo, iv.hi))
            .collect()
    }

    /// All `n`-chains (`n + 1` vertices) in lexicographic order.
    pub fn chains(&self, n: usize, mode: ChainMode) -> Vec<Chain> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n + 1);
        for v in 0..self.len() {
            cur.push(v);
            self.extend_chains(n, mode, &mut cur, &mut out);
            cur.pop();
        }
        out
    }

    fn extend_chains(&self, n: usize, mode: ChainMode, cur: &mut Chain, out: &mut Vec<Chain>) {
        if cur.len() == n + 1 {
            out.push(cur.clone());
            return;
        }
        let last = *cur.last().expect("chain is nonempty");
        for v in 0..self.len() {
            let ok = match mode {
                ChainMode::Weak => self.leq(last, v),
                ChainMode::Strict => self.lt(last, v),
            };
            if ok {
                cur.push(v);
                self.extend_chains(n, mode, cur, out);
                cur.pop();
            }
        }
    }

    pub fn chain_labels(&self, chain: &[usize]) -> Vec<String> {
        chain.iter().map(|&v| self.labels[v].clone()).collect()
    }

    /// Relations `(a, b)` with `a < b`, as label pairs, in index order.
    pub fn strict_relations(&self) -> Vec<(String, String)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt(i, j) {
                    out.push((self.labels[i].clone(), self.labels[j].clone()));
                }
            }
        }
        out
    }
}

pub fn is_degenerate(chain: &[usize]) -> bool {
    chain.windows(2).any(|w| w[0] == w[1])
}

/// Enumerated chain basis with a reverse index.
#[derive(Debug, Clone)]
pub struct ChainBasis {
    chains: Vec<Chain>,
    index: HashMap<Chain, usize>,
}

impl ChainBasis {
    pub fn new(poset: &Poset, n: usize, mode: ChainMode) -> Self {
        let chains = poset.chains(n, mode);
        let index = chains
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        Self { chains, index }
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn chain(&self, i: usize) -> &[usize] {
        &self.chains[i]
    }

    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    pub fn index_of(&self, chain: &[usize]) -> Option<usize> {
        self.index.get(chain).copied()
    }
}

type BasisCache = BTreeMap<(usize, ChainMode), Arc<ChainBasis>>;

/// The nerve of a poset with lazily enumerated, shared chain bases.
/// Cloning is cheap and clones share the cache.
#[derive(Clone, Debug)]
pub struct Nerve {
    poset: Arc<Poset>,
    cache: Arc<Mutex<BasisCache>>,
}

impl Nerve {
    pub fn new(poset: Poset) -> Self {
        Self {
            poset: Arc::new(poset),
            cache: Arc::default(),
        }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn basis(&self, n: usize, mode: ChainMode) -> Arc<ChainBasis> {
        let mut cache = self.cache.lock().expect("basis cache poisoned");
        cache
            .entry((n, mode))
            .or_insert_with(|| Arc::new(ChainBasis::new(&self.poset, n, mode)))
            .clone()
    }

    pub fn weak(&self, n: usize) -> Arc<ChainBasis> {
        self.basis(n, ChainMode::Weak)
    }

    /// Chain for a basis index of the weak `n`-chains, as labels.
    pub fn chain_labels(&self, n: usize, index: usize) -> Vec<String> {
        self.poset.chain_labels(self.weak(n).chain(index))
    }
}

/// The posets used throughout the tests, examples and acceptance suite.
pub mod samples {
    use super::Poset;

    /// Totally ordered `0 < 1 < … < k-1`.
    pub fn chain(k: usize) -> Poset {
        let labels: Vec<String> = (0..k).map(|i| i.to_string()).collect();
        let pairs: Vec<(String, String)> = (1..k)
            .map(|i| ((i - 1).to_string(), i.to_string()))
            .collect();
        Poset::from_relations(&labels, &pairs)
            .expect("chain is a poset")
            .with_name(format!("chain{k}"))
    }

    /// `bot < a, b < top`.
    pub fn diamond() -> Poset {
        Poset::from_relations(
            &["bot", "a", "b", "top"],
            &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
        )
        .expect("diamond is a poset")
        .with_name("diamond")
    }

    /// The crown `CR4`: `a, b < c, d` with no other relations; its nerve is a
    /// circle.
    pub fn crown4() -> Poset {
        Poset::from_relations(
            &["a", "b", "c", "d"],
            &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        )
        .expect("crown is a poset")
        .with_name("cr4")
    }

    /// Face poset of the boundary of the `dim`-simplex: nonempty proper
    /// subsets of `{0, …, dim}` ordered by inclusion, labelled by their
    /// sorted digits. `dim = 3` gives the 14-element 2-sphere.
    pub fn boundary_simplex(dim: usize) -> Poset {
        let verts = dim + 1;
        let full = (1u32 << verts) - 1;
        let mut subsets: Vec<u32> = (1..full).collect();
        subsets.sort_by_key(|s| (s.count_ones(), *s));
        let label = |s: u32| -> String {
            (0..verts)
                .filter(|i| s & (1 << i) != 0)
                .map(|i| i.to_string())
                .collect()
        };
        let labels: Vec<String> = subsets.iter().map(|&s| label(s)).collect();
        let mut pairs = Vec::new();
        for &a in &subsets {
            for &b in &subsets {
                if a != b && a & b == a && b.count_ones() == a.count_ones() + 1 {
                    pairs.push((label(a), label(b)));
                }
            }
        }
        Poset::from_relations(&labels, &pairs)
            .expect("face poset is a poset")
            .with_name(format!("sphere{}", subsets.len()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn two_chain_closure() {
        let p = samples::chain(2);
        assert!(p.leq(0, 0) && p.leq(0, 1) && p.leq(1, 1));
        assert!(!p.leq(1, 0));
        assert_eq!(p.intervals().len(), 3);
    }

    #[test]
    fn crown_has_no_extra_relations() {
        let p = samples::crown4();
        let (a, b, c, d) = (0, 1, 2, 3);
        assert!(!p.leq(a, b) && !p.leq(b, a));
        assert!(!p.leq(c, d) && !p.leq(d, c));
        assert_eq!(p.intervals().len(), 8);
    }

    #[test]
    fn cycle_rejected() {
        let err = Poset::from_relations(&["x", "y"], &[("x", "y"), ("y", "x")]).unwrap_err();
        assert!(matches!(err, PosetError::CycleDetected(..)));
    }

    #[test]
    fn duplicate_and_unknown_rejected() {
        assert!(matches!(
            Poset::from_relations(&["x", "x"], &[]).unwrap_err(),
            PosetError::DuplicateElement(_)
        ));
        assert!(matches!(
            Poset::from_relations(&["x"], &[("x", "z")]).unwrap_err(),
            PosetError::UnknownElement(_)
        ));
    }

    #[test]
    fn two_chain_weak_chains() {
        let p = samples::chain(2);
        assert_eq!(
            p.chains(1, ChainMode::Weak),
            vec![vec![0, 0], vec![0, 1], vec![1, 1]]
        );
        assert_eq!(
            p.chains(2, ChainMode::Weak),
            vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]
        );
    }

    #[test]
    fn sphere_strict_two_chains_brute_force() {
        let p = samples::boundary_simplex(3);
        assert_eq!(p.len(), 14);
        let n = p.len();
        let mut count = 0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if p.lt(a, b) && p.lt(b, c) {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 24);
        assert_eq!(p.chains(2, ChainMode::Strict).len(), 24);
        assert_eq!(p.chains(3, ChainMode::Weak).len(), 194);
    }

    #[test]
    fn interval_counts() {
        assert_eq!(samples::chain(3).intervals().len(), 6);
        let d = samples::diamond();
        let scanned = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| d.leq(i, j))
            .count();
        assert_eq!(scanned, 9);
        assert_eq!(d.intervals().len(), 9);
    }

    #[test]
    fn weak_counts_from_strict_counts() {
        for p in [
            samples::chain(3),
            samples::diamond(),
            samples::crown4(),
            samples::boundary_simplex(3),
        ] {
            for n in 0..=3 {
                let weak = p.chains(n, ChainMode::Weak).len();
                let expected: usize = (0..=n)
                    .map(|k| p.chains(k, ChainMode::Strict).len() * binom(n, k))
                    .sum();
                assert_eq!(weak, expected, "{} n={n}", p.name());
                let weak_set = p.chains(n, ChainMode::Weak);
                assert!(p
                    .chains(n, ChainMode::Strict)
                    .iter()
                    .all(|c| weak_set.contains(c)));
            }
        }
    }

    #[test]
    fn rebuilding_from_closure_is_idempotent() {
        let p = samples::boundary_simplex(3);
        let rebuilt = Poset::from_relations(p.labels(), &p.strict_relations()).unwrap();
        assert_eq!(rebuilt.leq, p.leq);
    }
}
