use super::IndexedGroup;
use crate::set::ElementSet;

/// Conjugacy classes, ordered by their smallest element index.
pub fn conjugacy_classes(g: &IndexedGroup) -> Vec<ElementSet> {
    let n = g.order();
    let mut seen = ElementSet::empty(n);
    let mut out = Vec::new();
    for x in 0..n as u32 {
        if seen.contains(x) {
            continue;
        }
        let class = g.normal_closure_of_set(&ElementSet::singleton(n, x));
        seen.union_with(&class);
        out.push(class);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupHandle, DEFAULT_INDEX_CAP};

    #[test]
    fn class_sizes() {
        let a5 = IndexedGroup::new(GroupHandle::alternating(5), DEFAULT_INDEX_CAP).unwrap();
        let mut sizes: Vec<usize> = conjugacy_classes(&a5).iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
        let l = IndexedGroup::new(GroupHandle::psl2(7).unwrap(), DEFAULT_INDEX_CAP).unwrap();
        let mut sizes: Vec<usize> = conjugacy_classes(&l).iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 21, 24, 24, 42, 56]);
    }
}
