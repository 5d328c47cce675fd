//! Union-find with a Z2 offset on each element relative to its root.

#[derive(Debug, Clone)]
pub(crate) struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<bool>,
    rank: Vec<u8>,
}

impl ParityUnionFind {
    pub fn new(n: usize) -> Self {
        ParityUnionFind {
            parent: (0..n).collect(),
            parity: vec![false; n],
            rank: vec![0; n],
        }
    }

    /// Root of `x` and the parity of `x` relative to it.
    pub fn find(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // compress from the top so each node's parity is relative to root
        for &node in path.iter().rev() {
            let p = self.parent[node];
            if p != root {
                self.parity[node] ^= self.parity[p];
            }
            self.parent[node] = root;
        }
        (root, if x == root { false } else { self.parity[x] })
    }

    /// Records `parity(a) + parity(b) = rel`. Returns `false` on a conflict
    /// with earlier relations.
    pub fn union(&mut self, a: usize, b: usize, rel: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == rel;
        }
        let (child, root) = if self.rank[ra] < self.rank[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[child] = root;
        self.parity[child] = pa ^ pb ^ rel;
        if self.rank[ra] == self.rank[rb] {
            self.rank[root] += 1;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_is_tracked_through_chains() {
        let mut uf = ParityUnionFind::new(5);
        assert!(uf.union(0, 1, true));
        assert!(uf.union(1, 2, true));
        assert!(uf.union(3, 2, false));
        let (r0, p0) = uf.find(0);
        let (r3, p3) = uf.find(3);
        assert_eq!(r0, r3);
        assert!(!(p0 ^ p3));
        assert!(uf.union(0, 3, false));
        assert!(!uf.union(0, 2, true));
        assert_ne!(uf.find(4).0, r0);
    }
}
