/// A set of dense node indices with O(1) membership test and removal.
///
/// Iteration follows insertion order. Removed entries are skipped lazily and
/// compacted away once they make up half of the backing list.
#[derive(Clone, Debug, Default)]
pub struct NodeSet {
    order: Vec<usize>,
    present: Vec<bool>,
    len: usize,
}

impl NodeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_universe(universe: usize) -> Self {
        Self {
            order: Vec::new(),
            present: vec![false; universe],
            len: 0,
        }
    }

    /// Returns `false` when `v` was already a member.
    pub fn insert(&mut self, v: usize) -> bool {
        if v >= self.present.len() {
            self.present.resize(v + 1, false);
        }
        if self.present[v] {
            return false;
        }
        self.present[v] = true;
        self.order.push(v);
        self.len += 1;
        true
    }

    pub fn remove(&mut self, v: usize) -> bool {
        match self.present.get_mut(v) {
            Some(slot) if *slot => {
                *slot = false;
                self.len -= 1;
                if self.order.len() > 32 && self.len * 2 < self.order.len() {
                    let present = &self.present;
                    self.order.retain(|&x| present[x]);
                }
                true
            }
            _ => false,
        }
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.present.get(v).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.order.iter().copied().filter(|&v| self.present[v])
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }
}

impl PartialEq for NodeSet {
    /// Set equality; insertion order is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.is_subset(other)
    }
}

impl Eq for NodeSet {}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = NodeSet::new();
        for v in iter {
            set.insert(v);
        }
        set
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insertion_order_survives_removal() {
        let mut s: NodeSet = [5, 1, 9, 3].into_iter().collect();
        assert!(s.remove(1));
        assert!(!s.remove(1));
        assert!(!s.insert(5));
        assert_eq!(s.to_vec(), vec![5, 9, 3]);
        assert_eq!(s.len(), 3);
        assert!(!s.contains(1));
        assert!(!s.contains(100));
    }

    #[test]
    fn compaction_keeps_members() {
        let mut s: NodeSet = (0..100).collect();
        for v in (0..100).filter(|v| v % 3 != 0) {
            s.remove(v);
        }
        assert_eq!(
            s.to_vec(),
            (0..100).filter(|v| v % 3 == 0).collect::<Vec<_>>()
        );
        s.insert(1);
        assert_eq!(s.iter().last(), Some(1));
    }

    #[test]
    fn equality_ignores_order() {
        let a: NodeSet = [1, 2, 3].into_iter().collect();
        let b: NodeSet = [3, 1, 2].into_iter().collect();
        let c: NodeSet = [1, 2].into_iter().collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
