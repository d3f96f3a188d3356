//! Solutions of the Markov equation `a^2 + b^2 + c^2 = 3abc` and the
//! weighted projective planes `P(a^2, b^2, c^2)` attached to them.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::surfcat::Wps2;

pub fn is_markov(a: &BigUint, b: &BigUint, c: &BigUint) -> bool {
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return false;
    }
    a * a + b * b + c * c == BigUint::from(3u8) * a * b * c
}

/// A Markov triple, stored sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkovTriple([BigUint; 3]);

impl MarkovTriple {
    pub fn new(a: impl Into<BigUint>, b: impl Into<BigUint>, c: impl Into<BigUint>) -> Result<Self> {
        let mut v = [a.into(), b.into(), c.into()];
        if !is_markov(&v[0], &v[1], &v[2]) {
            return Err(Error::domain(format!(
                "({}, {}, {}) does not solve a^2+b^2+c^2 = 3abc",
                v[0], v[1], v[2]
            )));
        }
        v.sort();
        let t = MarkovTriple(v);
        t.check_consequences()?;
        Ok(t)
    }

    pub fn root() -> Self {
        MarkovTriple([BigUint::one(), BigUint::one(), BigUint::one()])
    }

    fn check_consequences(&self) -> Result<()> {
        let [a, b, c] = &self.0;
        for (x, y) in [(a, b), (a, c), (b, c)] {
            if !x.gcd(y).is_one() {
                return Err(Error::domain(format!("{x} and {y} share a factor")));
            }
        }
        let three = BigUint::from(3u8);
        if self.0.iter().any(|x| (x % &three).is_zero()) {
            return Err(Error::domain("Markov entry divisible by 3"));
        }
        Ok(())
    }

    pub fn entries(&self) -> &[BigUint; 3] {
        &self.0
    }

    pub fn max_entry(&self) -> &BigUint {
        &self.0[2]
    }

    /// Replaces the entry at `position` (1, 2 or 3, on the sorted slots) by
    /// `3 * (product of the others) - entry`.
    pub fn mutate(&self, position: usize) -> Result<Self> {
        if !(1..=3).contains(&position) {
            return Err(Error::domain(format!("mutation position {position} not in 1..=3")));
        }
        let i = position - 1;
        let others: BigUint = (0..3).filter(|&j| j != i).map(|j| &self.0[j]).product();
        let mut v = self.0.clone();
        v[i] = BigUint::from(3u8) * others - &self.0[i];
        v.sort();
        debug_assert!(is_markov(&v[0], &v[1], &v[2]));
        Ok(MarkovTriple(v))
    }

    /// The slot the mutation of `position` lands on after re-sorting, so that
    /// mutating there again undoes it.
    pub fn mutated_slot(&self, position: usize) -> Result<(Self, usize)> {
        let m = self.mutate(position)?;
        let i = position - 1;
        let others: BigUint = (0..3).filter(|&j| j != i).map(|j| &self.0[j]).product();
        let new_value = BigUint::from(3u8) * others - &self.0[i];
        let slot = m.0.iter().position(|x| *x == new_value).expect("new value present");
        Ok((m, slot + 1))
    }

    pub fn to_u64(&self) -> Option<[u64; 3]> {
        Some([self.0[0].to_u64()?, self.0[1].to_u64()?, self.0[2].to_u64()?])
    }

    fn order_key(&self) -> (&BigUint, &BigUint, &BigUint) {
        (&self.0[2], &self.0[1], &self.0[0])
    }
}

impl PartialOrd for MarkovTriple {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MarkovTriple {
    /// By largest entry, then middle, then smallest.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl fmt::Display for MarkovTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl Serialize for MarkovTriple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // Entries beyond u64 are written as decimal strings.
        match self.to_u64() {
            Some(v) => v.serialize(s),
            None => self
                .0
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .serialize(s),
        }
    }
}

/// Markov triples reachable from `(1,1,1)` without exceeding a maximum entry,
/// together with the mutation edges between them.
#[derive(Clone, Debug, Serialize)]
pub struct MarkovTree {
    pub triples: Vec<MarkovTriple>,
    /// Index pairs `[i, j]` with `i < j` into `triples`.
    pub edges: Vec<[usize; 2]>,
}

impl MarkovTree {
    pub fn contains(&self, t: &MarkovTriple) -> bool {
        self.triples.binary_search(t).is_ok()
    }

    /// Connected with `|E| = |V| - 1`.
    pub fn is_tree(&self) -> bool {
        let n = self.triples.len();
        if n == 0 || self.edges.len() != n - 1 {
            return false;
        }
        let mut adj = vec![Vec::new(); n];
        for &[i, j] in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }
}

/// Breadth-first closure of `(1,1,1)` under the three mutations, pruned where
/// the largest entry exceeds `max_entry`.
pub fn enumerate(max_entry: &BigUint) -> MarkovTree {
    let root = MarkovTriple::root();
    let mut seen: BTreeSet<MarkovTriple> = BTreeSet::new();
    let mut raw_edges: BTreeSet<(MarkovTriple, MarkovTriple)> = BTreeSet::new();
    if max_entry.is_zero() {
        return MarkovTree { triples: Vec::new(), edges: Vec::new() };
    }
    seen.insert(root.clone());
    let mut queue = VecDeque::from([root]);
    while let Some(t) = queue.pop_front() {
        for pos in 1..=3 {
            let m = t.mutate(pos).expect("valid position");
            if m.max_entry() > max_entry || m == t {
                continue;
            }
            let edge = if t < m { (t.clone(), m.clone()) } else { (m.clone(), t.clone()) };
            raw_edges.insert(edge);
            if seen.insert(m.clone()) {
                queue.push_back(m);
            }
        }
    }
    let triples: Vec<MarkovTriple> = seen.into_iter().collect();
    let index: BTreeMap<&MarkovTriple, usize> =
        triples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut edges: Vec<[usize; 2]> = raw_edges
        .iter()
        .map(|(x, y)| [index[x], index[y]])
        .collect();
    edges.sort();
    MarkovTree { triples, edges }
}

pub fn enumerate_up_to(max_entry: u64) -> MarkovTree {
    enumerate(&BigUint::from(max_entry))
}

/// The weighted projective plane `P(a^2, b^2, c^2)`.
pub fn manetti_wps(t: &MarkovTriple) -> Result<Wps2> {
    let [a, b, c] = t
        .to_u64()
        .filter(|v| v[2] <= u32::MAX as u64)
        .ok_or_else(|| Error::domain(format!("{t}: squares exceed 64-bit weights")))?;
    Wps2::new([a * a, b * b, c * c])
}
