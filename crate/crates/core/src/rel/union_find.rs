/// Disjoint-set forest over `[0, len)` with path compression and union by size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionFind {
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

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Root lookup without compression, for shared snapshots.
    pub fn root(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` when two distinct classes were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        true
    }

    /// Points every node directly at its root.
    pub fn compress_all(&mut self) {
        for x in 0..self.len() {
            self.find(x);
        }
    }

    /// Least element of each node's class.
    pub fn least_members(&self) -> Vec<usize> {
        let mut least_of_root = vec![usize::MAX; self.len()];
        let mut out = Vec::with_capacity(self.len());
        for x in 0..self.len() {
            let r = self.root(x);
            if least_of_root[r] == usize::MAX {
                least_of_root[r] = x;
            }
            out.push(least_of_root[r]);
        }
        out
    }
}
