use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::EpistemicState;
use crate::error::Result;
use crate::logic::Signature;

type Key = (u32, Vec<u32>, Vec<u32>);

impl EpistemicState {
    /// Whether some bijection between the states preserves the preference in
    /// both directions and maps every label to a logically equivalent one.
    ///
    /// States are first partitioned by label-equivalence class and refined
    /// by the classes of their neighbours above and below; the bijection is
    /// then searched class by class with backtracking.
    pub fn isomorphic(&self, other: &EpistemicState) -> Result<bool> {
        let n = self.len();
        if n != other.len() {
            return Ok(false);
        }
        if n == 0 {
            return Ok(true);
        }
        let own_sig = Signature::of(self.labels.iter().flat_map(|b| b.iter()));
        let other_sig = Signature::of(other.labels.iter().flat_map(|b| b.iter()));
        let (_, left_tables) = self.label_tables(&other_sig)?;
        let (_, right_tables) = other.label_tables(&own_sig)?;

        let mut ids = BTreeMap::new();
        let mut left: Vec<u32> = Vec::with_capacity(n);
        let mut right: Vec<u32> = Vec::with_capacity(n);
        for t in &left_tables {
            left.push(intern(&mut ids, t.clone()));
        }
        for t in &right_tables {
            right.push(intern(&mut ids, t.clone()));
        }

        let left_below = self.below();
        let right_below = other.below();
        let mut classes = ids.len();
        loop {
            if histogram(&left) != histogram(&right) {
                return Ok(false);
            }
            let mut keys: BTreeMap<Key, u32> = BTreeMap::new();
            let next_left: Vec<u32> =
                (0..n).map(|s| intern(&mut keys, self.refine_key(s, &left, &left_below))).collect();
            let next_right: Vec<u32> =
                (0..n).map(|s| intern(&mut keys, other.refine_key(s, &right, &right_below))).collect();
            left = next_left;
            right = next_right;
            if keys.len() == classes {
                break;
            }
            classes = keys.len();
        }
        if histogram(&left) != histogram(&right) {
            return Ok(false);
        }

        let mut by_color: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (t, c) in right.iter().enumerate() {
            by_color.entry(*c).or_default().push(t);
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&s| (by_color[&left[s]].len(), s));
        Ok(self.search(other, &order, &left, &by_color))
    }

    pub(crate) fn below(&self) -> Vec<Vec<usize>> {
        let mut below = vec![Vec::new(); self.len()];
        for (s, t) in self.pairs() {
            below[t].push(s);
        }
        below
    }

    fn refine_key(&self, s: usize, colors: &[u32], below: &[Vec<usize>]) -> Key {
        let mut up: Vec<u32> = self.above[s].iter().map(|&t| colors[t]).collect();
        let mut down: Vec<u32> = below[s].iter().map(|&t| colors[t]).collect();
        up.sort_unstable();
        down.sort_unstable();
        (colors[s], up, down)
    }

    fn search(
        &self,
        other: &EpistemicState,
        order: &[usize],
        colors: &[u32],
        by_color: &BTreeMap<u32, Vec<usize>>,
    ) -> bool {
        let n = order.len();
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let mut cursor = vec![0usize; n];
        let mut depth = 0;
        loop {
            if depth == n {
                return true;
            }
            let s = order[depth];
            let candidates = &by_color[&colors[s]];
            let mut placed = false;
            while cursor[depth] < candidates.len() {
                let c = candidates[cursor[depth]];
                cursor[depth] += 1;
                if used[c] {
                    continue;
                }
                let consistent = order[..depth].iter().all(|&a| {
                    let b = image[a];
                    self.prefers(s, a) == other.prefers(c, b) && self.prefers(a, s) == other.prefers(b, c)
                });
                if consistent {
                    image[s] = c;
                    used[c] = true;
                    placed = true;
                    break;
                }
            }
            if placed {
                depth += 1;
                if depth < n {
                    cursor[depth] = 0;
                }
            } else {
                if depth == 0 {
                    return false;
                }
                cursor[depth] = 0;
                depth -= 1;
                let prev = order[depth];
                used[image[prev]] = false;
                image[prev] = usize::MAX;
            }
        }
    }
}

fn intern<K: Ord>(ids: &mut BTreeMap<K, u32>, key: K) -> u32 {
    let next = ids.len() as u32;
    *ids.entry(key).or_insert(next)
}

fn histogram(colors: &[u32]) -> Vec<u32> {
    let mut h = colors.to_vec();
    h.sort_unstable();
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flock::{Base, Flock};
    use crate::logic::parse_formula;

    fn gen(bs: &[&[&str]]) -> EpistemicState {
        let flock: Flock =
            bs.iter().map(|b| b.iter().map(|s| parse_formula(s).unwrap()).collect::<Base>()).collect();
        EpistemicState::generate(&flock).unwrap()
    }

    #[test]
    fn equivalent_labels_are_enough() {
        assert!(gen(&[&["A"]]).isomorphic(&gen(&[&["~~A"]])).unwrap());
        assert!(gen(&[&["A", "B"]]).isomorphic(&gen(&[&["B & true", "~~A"]])).unwrap());
    }

    #[test]
    fn different_shapes_are_not_isomorphic() {
        assert!(!gen(&[&["A"], &["B"]]).isomorphic(&gen(&[&["A", "B"]])).unwrap());
        assert!(!gen(&[&["A"]]).isomorphic(&gen(&[&["B"]])).unwrap());
        // same labels up to equivalence, different order
        let chain = EpistemicState::new(vec![Base::new(), Base::new()], [(0, 1)]).unwrap();
        let flat = EpistemicState::new(vec![Base::new(), Base::new()], []).unwrap();
        assert!(!chain.isomorphic(&flat).unwrap());
        assert!(chain.isomorphic(&chain).unwrap());
    }

    #[test]
    fn symmetric_states_need_search() {
        // two chains of equal-label states that refinement cannot tell apart
        let labels = vec![Base::new(); 4];
        let two_chains = EpistemicState::new(labels.clone(), [(0, 1), (2, 3)]).unwrap();
        let swapped = EpistemicState::new(labels.clone(), [(3, 0), (1, 2)]).unwrap();
        assert!(two_chains.isomorphic(&swapped).unwrap());
        let crossed = EpistemicState::new(labels, [(0, 1), (0, 3), (2, 3)]).unwrap();
        assert!(!two_chains.isomorphic(&crossed).unwrap());
    }

    #[test]
    fn generated_states_are_isomorphic_to_themselves() {
        let e = gen(&[&["A", "B", "A | B"], &["C", "A"]]);
        assert!(e.isomorphic(&e).unwrap());
        let e2 = gen(&[&["A", "C"], &["A | B", "B", "A"]]);
        assert!(e.isomorphic(&e2).unwrap());
    }
}
