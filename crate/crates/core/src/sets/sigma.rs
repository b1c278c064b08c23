//! Search for a permutation moving a removed family into `S(r)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{is_full_rank, SetFamily, Subset};
use crate::error::{Error, Result};

/// A permutation of `[n]`; `image[i - 1] = σ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PermCert {
    n: usize,
    image: Vec<usize>,
}

impl PermCert {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n + 1];
        for &x in &image {
            if x == 0 || x > n || seen[x] {
                return Err(Error::OutOfRange(format!("{:?} is not a permutation of [{}]", image, n)));
            }
            seen[x] = true;
        }
        Ok(PermCert { n, image })
    }

    pub fn identity(n: usize) -> Self {
        PermCert { n, image: (1..=n).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, a: &Subset) -> Subset {
        let elems: Vec<usize> = a.elements().iter().map(|&e| self.image[e - 1]).collect();
        Subset::new(self.n, &elems).expect("permutation of [n]")
    }

    /// Whether σ maps every member of `family` into `S(r)`.
    pub fn certifies(&self, family: &SetFamily) -> bool {
        family.subsets().iter().all(|a| is_full_rank(&self.apply(a)))
    }
}

struct Search {
    n: usize,
    /// `members[c]`: family members containing the elements of class `c`.
    members: Vec<Vec<usize>>,
    sizes: Vec<usize>,
    used: Vec<usize>,
    counts: Vec<usize>,
    order: Vec<usize>,
    dead: BTreeSet<Vec<usize>>,
}

impl Search {
    fn run(&mut self, t: usize) -> bool {
        if t > self.n {
            return true;
        }
        if self.dead.contains(&self.used) {
            return false;
        }
        let cap = t / 2;
        for c in 0..self.sizes.len() {
            if self.used[c] == self.sizes[c] || self.members[c].iter().any(|&a| self.counts[a] + 1 > cap) {
                continue;
            }
            self.used[c] += 1;
            for &a in &self.members[c] {
                self.counts[a] += 1;
            }
            self.order.push(c);
            if self.run(t + 1) {
                return true;
            }
            self.order.pop();
            for &a in &self.members[c] {
                self.counts[a] -= 1;
            }
            self.used[c] -= 1;
        }
        self.dead.insert(self.used.clone());
        false
    }
}

/// A permutation `σ` with `σ(A) ∈ S(r)` for every `A` in `removed`, or
/// `None` when none exists.
///
/// Positions `1..=n` are filled left to right. Elements lying in exactly the
/// same members of the family are interchangeable, so the search branches
/// over these classes only, prunes with the prefix bound
/// `|σ(A) ∩ [i]| <= floor(i/2)`, and memoises dead states. The search is
/// exhaustive.
pub fn find_sigma(removed: &SetFamily) -> Option<PermCert> {
    let n = removed.n();
    let r = removed.r();
    if 2 * r > n {
        return None;
    }
    let sets = removed.subsets();
    let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for e in 1..=n {
        let sig: Vec<usize> = (0..sets.len()).filter(|&k| sets[k].contains(e)).collect();
        classes.entry(sig).or_default().push(e);
    }
    // elements outside every member first; they never violate the bound
    let mut classes: Vec<(Vec<usize>, Vec<usize>)> = classes.into_iter().collect();
    classes.sort_by_key(|(sig, elems)| (!sig.is_empty(), elems[0]));
    let mut search = Search {
        n,
        members: classes.iter().map(|(s, _)| s.clone()).collect(),
        sizes: classes.iter().map(|(_, e)| e.len()).collect(),
        used: vec![0; classes.len()],
        counts: vec![0; sets.len()],
        order: Vec::with_capacity(n),
        dead: BTreeSet::new(),
    };
    if !search.run(1) {
        return None;
    }
    let mut next = vec![0usize; classes.len()];
    let mut image = vec![0usize; n];
    for (pos, &c) in search.order.iter().enumerate() {
        let e = classes[c].1[next[c]];
        next[c] += 1;
        image[e - 1] = pos + 1;
    }
    let cert = PermCert::new(image).expect("every position assigned once");
    debug_assert!(cert.certifies(removed));
    Some(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::binom;
    use crate::sets::all_subsets;

    fn set(n: usize, e: &[usize]) -> Subset {
        Subset::new(n, e).unwrap()
    }

    #[test]
    fn perm_validation() {
        assert!(PermCert::new(vec![2, 1, 3]).is_ok());
        assert!(PermCert::new(vec![1, 1, 3]).is_err());
        assert!(PermCert::new(vec![0, 1]).is_err());
    }

    #[test]
    fn already_in_s_r() {
        let fam = SetFamily::from_subsets(6, 2, &[set(6, &[2, 4]), set(6, &[3, 5])]).unwrap();
        assert!(PermCert::identity(6).certifies(&fam));
        let cert = find_sigma(&fam).unwrap();
        assert!(cert.certifies(&fam));
    }

    #[test]
    fn two_disjoint_sets_interleave() {
        for r in 1..=4 {
            let n = 2 * r + 1;
            let a: Vec<usize> = (1..=r).collect();
            let b: Vec<usize> = (r + 1..=2 * r).collect();
            let fam = SetFamily::from_subsets(n, r, &[set(n, &a), set(n, &b)]).unwrap();
            let cert = find_sigma(&fam).unwrap();
            let evens: Vec<usize> = (1..=r).map(|i| 2 * i).collect();
            let odds: Vec<usize> = (1..=r).map(|i| 2 * i + 1).collect();
            assert_eq!(cert.apply(&set(n, &a)).elements(), evens);
            assert_eq!(cert.apply(&set(n, &b)).elements(), odds);
        }
    }

    #[test]
    fn all_small_families_n7_r3() {
        let total = binom(7, 3);
        let mut count = 0;
        for i in 0..total {
            for j in i..total {
                let members = if i == j { vec![i] } else { vec![i, j] };
                let fam = SetFamily::new(7, 3, members).unwrap();
                let cert = find_sigma(&fam).expect("sigma exists");
                assert!(cert.certifies(&fam));
                count += 1;
            }
        }
        assert_eq!(count, 35 + 595);
        assert!(find_sigma(&SetFamily::empty(7, 3)).is_some());
    }

    #[test]
    fn impossible_family_is_reported() {
        // all 2-subsets of [4] cannot fit inside S(2), which has 2 elements
        let fam = SetFamily::all(4, 2);
        assert!(find_sigma(&fam).is_none());
        // three 2-subsets of [4] covering all elements twice also fail
        let sets: Vec<Subset> = all_subsets(4, 2).into_iter().take(3).collect();
        let fam = SetFamily::from_subsets(4, 2, &sets).unwrap();
        assert!(find_sigma(&fam).is_none());
    }
}
