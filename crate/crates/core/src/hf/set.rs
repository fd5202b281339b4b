use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;

use super::{bit_cap, AckCode};

/// A hereditarily finite set in canonical form: children distinct and ascending by code.
///
/// Subtrees are shared through `Arc`, so deep ordinals stay linear in size. The code is
/// cached when it fits under the bit cap; the order between sets follows the codes even
/// past the cap.
#[derive(Clone)]
pub struct HfSet(Arc<Node>);

struct Node {
    children: Vec<HfSet>,
    code: Option<AckCode>,
    hash: u64,
    rank: u64,
    ordinal: Option<u64>,
}

impl HfSet {
    pub fn empty() -> Self {
        Self::from_sorted_unique(Vec::new())
    }

    /// Builds a set from arbitrary children, sorting and collapsing duplicates.
    pub fn from_children(mut children: Vec<HfSet>) -> Self {
        children.sort();
        children.dedup();
        Self::from_sorted_unique(children)
    }

    /// Builds a set from children already in canonical order.
    pub fn from_sorted_unique(children: Vec<HfSet>) -> Self {
        debug_assert!(children.windows(2).all(|w| w[0] < w[1]));
        let mut h = DefaultHasher::new();
        children.len().hash(&mut h);
        for c in &children {
            c.0.hash.hash(&mut h);
        }
        let hash = h.finish();
        let rank = children.iter().map(|c| c.rank() + 1).max().unwrap_or(0);
        let ordinal = {
            let k = children.len() as u64;
            let ok = children
                .iter()
                .enumerate()
                .all(|(i, c)| c.0.ordinal == Some(i as u64));
            ok.then_some(k)
        };
        let code = compute_code(&children);
        Self(Arc::new(Node {
            children,
            code,
            hash,
            rank,
            ordinal,
        }))
    }

    pub fn singleton(x: HfSet) -> Self {
        Self::from_sorted_unique(vec![x])
    }

    pub fn pair(a: HfSet, b: HfSet) -> Self {
        Self::from_children(vec![a, b])
    }

    /// Kuratowski-style ordered pair `{{a}, {a, b}}`.
    pub fn ordered_pair(a: HfSet, b: HfSet) -> Self {
        Self::pair(Self::singleton(a.clone()), Self::pair(a, b))
    }

    pub fn children(&self) -> &[HfSet] {
        &self.0.children
    }

    pub fn len(&self) -> usize {
        self.0.children.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.children.is_empty()
    }

    pub fn contains(&self, x: &HfSet) -> bool {
        self.0.children.binary_search(x).is_ok()
    }

    /// The Ackermann code, or `None` when it is longer than the bit cap.
    pub fn code(&self) -> Option<&AckCode> {
        self.0.code.as_ref()
    }

    pub fn rank(&self) -> u64 {
        self.0.rank
    }

    /// `Some(n)` iff this is the von Neumann numeral `n`.
    pub fn ordinal_index(&self) -> Option<u64> {
        self.0.ordinal
    }

    /// `x ∪ {x}`. Appending keeps the order since every member sorts below the set.
    pub fn successor(&self) -> Self {
        let mut ch = self.0.children.clone();
        ch.push(self.clone());
        Self::from_sorted_unique(ch)
    }

    pub fn union(&self, other: &HfSet) -> Self {
        let (a, b) = (self.children(), other.children());
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(a[i].clone());
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self::from_sorted_unique(out)
    }

    pub fn intersection(&self, other: &HfSet) -> Self {
        let (a, b) = (self.children(), other.children());
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push(a[i].clone());
                    i += 1;
                    j += 1;
                }
            }
        }
        Self::from_sorted_unique(out)
    }

    /// `⋃x`.
    pub fn big_union(&self) -> Self {
        let all: Vec<HfSet> = self
            .children()
            .iter()
            .flat_map(|c| c.children().iter().cloned())
            .collect();
        Self::from_children(all)
    }

    pub fn with_member(&self, x: HfSet) -> Self {
        self.union(&Self::singleton(x))
    }

    pub fn is_subset(&self, other: &HfSet) -> bool {
        self.children().iter().all(|c| other.contains(c))
    }

    pub fn is_transitive(&self) -> bool {
        self.children().iter().all(|c| c.is_subset(self))
    }
}

fn compute_code(children: &[HfSet]) -> Option<AckCode> {
    let cap = bit_cap();
    let mut v = BigUint::zero();
    for c in children {
        let i = c.code()?.to_u64()?;
        if i >= cap {
            return None;
        }
        v.set_bit(i, true);
    }
    AckCode::new(v).ok()
}

impl PartialEq for HfSet {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.hash != other.0.hash {
            return false;
        }
        match (&self.0.code, &other.0.code) {
            (Some(a), Some(b)) => a == b,
            (None, None) => self.0.children == other.0.children,
            _ => false,
        }
    }
}

impl Eq for HfSet {}

impl Hash for HfSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash.hash(state)
    }
}

impl Ord for HfSet {
    /// Ackermann-code order. Past the cap, codes are compared through their highest
    /// differing member, which is what comparing the binary numerals amounts to.
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        match (&self.0.code, &other.0.code) {
            (Some(a), Some(b)) => a.cmp(b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => {
                let a = self.children().iter().rev();
                let b = other.children().iter().rev();
                for (x, y) in a.zip(b) {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                self.len().cmp(&other.len())
            }
        }
    }
}

impl PartialOrd for HfSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.children().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.code() {
            Some(c) if c.bits() <= 64 => write!(f, "HfSet(#{c})"),
            _ => write!(f, "HfSet(rank {}, {} members)", self.rank(), self.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hf::{decode, encode, von_neumann};

    #[test]
    fn duplicates_collapse() {
        let e = HfSet::empty();
        let s = HfSet::from_children(vec![e.clone(), e.clone()]);
        assert_eq!(s.len(), 1);
        assert_eq!(encode(&s).unwrap(), AckCode::from(1u64));
    }

    #[test]
    fn display_braces() {
        assert_eq!(decode(&AckCode::from(3u64)).to_string(), "{{},{{}}}");
    }

    #[test]
    fn order_past_cap_matches_numeric_order() {
        // v(6) and v(7) have codes far past any cap; their order is still by code.
        let v6 = von_neumann(6);
        let v7 = von_neumann(7);
        assert!(v6.code().is_none());
        assert!(v6 < v7);
        assert!(v7.contains(&v6));
        let mut odd = HfSet::from_children(vec![v6.clone(), HfSet::empty()]);
        assert!(odd.cmp(&v6) == Ordering::Greater);
        odd = HfSet::singleton(v6.clone());
        assert!(odd < v7);
    }

    #[test]
    fn structural_ops() {
        let a = decode(&AckCode::from(5u64));
        let b = decode(&AckCode::from(3u64));
        assert_eq!(encode(&a.union(&b)).unwrap(), AckCode::from(7u64));
        assert_eq!(encode(&a.intersection(&b)).unwrap(), AckCode::from(1u64));
        assert_eq!(encode(&decode(&AckCode::from(6u64)).big_union()).unwrap(), AckCode::from(3u64));
        assert!(decode(&AckCode::from(11u64)).is_transitive());
        assert!(!decode(&AckCode::from(2u64)).is_transitive());
    }
}
