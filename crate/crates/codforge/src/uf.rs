//! Union-find over nodes carrying a Z/2 offset to their root, used to
//! solve systems of sign constraints of the form s_a · s_b = ±1.

#[derive(Clone)]
pub(crate) struct ParityUf {
    parent: Vec<usize>,
    // Parity of the path to the parent: 0 = same sign, 1 = opposite.
    parity: Vec<u8>,
    rank: Vec<u8>,
}

impl ParityUf {
    pub fn new(n: usize) -> ParityUf {
        ParityUf {
            parent: (0..n).collect(),
            parity: vec![0; n],
            rank: vec![0; n],
        }
    }

    /// Root of `x` and the parity of the compressed path to it.
    pub fn find(&mut self, x: usize) -> (usize, u8) {
        let mut root = x;
        let mut par = 0u8;
        while self.parent[root] != root {
            par ^= self.parity[root];
            root = self.parent[root];
        }
        // Second pass: point everything on the path at the root.
        let mut node = x;
        let mut node_par = par;
        while self.parent[node] != root {
            let next = self.parent[node];
            let next_par = node_par ^ self.parity[node];
            self.parent[node] = root;
            self.parity[node] = node_par;
            node = next;
            node_par = next_par;
        }
        (root, par)
    }

    /// Impose parity(a) ⊕ parity(b) = `parity`. Returns false iff this
    /// contradicts the constraints already merged.
    pub fn union(&mut self, a: usize, b: usize, parity: u8) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == parity;
        }
        let link = pa ^ pb ^ parity;
        if self.rank[ra] < self.rank[rb] {
            self.parent[ra] = rb;
            self.parity[ra] = link;
        } else {
            self.parent[rb] = ra;
            self.parity[rb] = link;
            if self.rank[ra] == self.rank[rb] {
                self.rank[ra] += 1;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn consistent_chain_resolves_parities() {
        let mut uf = ParityUf::new(4);
        assert!(uf.union(0, 1, 1));
        assert!(uf.union(1, 2, 1));
        assert!(uf.union(2, 3, 0));
        let (r0, p0) = uf.find(0);
        let (r2, p2) = uf.find(2);
        let (r3, p3) = uf.find(3);
        assert_eq!(r0, r2);
        assert_eq!(p0 ^ p2, 0); // 0 and 2 agree through two flips
        assert_eq!(r0, r3);
        assert_eq!(p0 ^ p3, 0);
    }

    #[test]
    fn odd_cycle_is_rejected() {
        let mut uf = ParityUf::new(3);
        assert!(uf.union(0, 1, 1));
        assert!(uf.union(1, 2, 1));
        assert!(!uf.union(0, 2, 1)); // would make the triangle odd
        assert!(uf.union(0, 2, 0)); // the consistent closure is fine
    }

    #[test]
    // The literal XOR chain spells out the path parity being re-added.
    #[allow(clippy::identity_op)]
    fn redundant_constraints_accepted() {
        let mut uf = ParityUf::new(5);
        for i in 0..4 {
            assert!(uf.union(i, i + 1, (i % 2) as u8));
        }
        assert!(uf.union(0, 4, 1 ^ 0 ^ 1 ^ 0));
        assert!(!uf.union(0, 4, 1));
    }
}
