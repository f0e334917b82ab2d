/// Disjoint-set forest over `0..len` with path halving and union by size.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            self.parent[ra] = rb;
            self.size[rb] += self.size[ra];
        } else {
            self.parent[rb] = ra;
            self.size[ra] += self.size[rb];
        }
    }

    /// Merge every element with the first element carrying the same label.
    pub fn union_labels(&mut self, labels: &[u8], offset: usize) {
        let mut first = [usize::MAX; 256];
        for (p, &l) in labels.iter().enumerate() {
            let slot = &mut first[l as usize];
            if *slot == usize::MAX {
                *slot = p + offset;
            } else {
                let s = *slot;
                self.union(s, p + offset);
            }
        }
    }
}
