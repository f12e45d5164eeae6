//! Maximal clique enumeration over bitmask adjacency.

/// Enumerates the maximal cliques of the graph induced on `vertices`, using
/// Bron–Kerbosch with Tomita pivoting. `adj[v]` is the neighbour mask of `v`
/// (no self loops). Isolated vertices come out as singleton cliques.
pub fn maximal_cliques(vertices: u128, adj: &[u128]) -> Vec<u128> {
    let mut out = Vec::new();
    if vertices != 0 {
        expand(0, vertices, 0, adj, &mut out);
    }
    out
}

fn expand(r: u128, mut p: u128, mut x: u128, adj: &[u128], out: &mut Vec<u128>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    // pivot maximises |P ∩ N(u)| over u ∈ P ∪ X
    let mut pivot_nbrs = 0u128;
    let mut best = -1i32;
    let mut cand = p | x;
    while cand != 0 {
        let u = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        let c = (p & adj[u]).count_ones() as i32;
        if c > best {
            best = c;
            pivot_nbrs = adj[u];
        }
    }
    let mut todo = p & !pivot_nbrs;
    while todo != 0 {
        let v = todo.trailing_zeros() as usize;
        let bit = 1u128 << v;
        todo &= todo - 1;
        expand(r | bit, p & adj[v], x & adj[v], adj, out);
        p &= !bit;
        x |= bit;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<u128> {
        let mut adj = vec![0u128; n];
        for &(a, b) in edges {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        adj
    }

    fn sorted(mut v: Vec<u128>) -> Vec<u128> {
        v.sort();
        v
    }

    #[test]
    fn path_and_cycle() {
        let adj = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(sorted(maximal_cliques(0b111, &adj)), vec![0b011, 0b110]);
        let adj = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(
            sorted(maximal_cliques(0b1111, &adj)),
            vec![0b0011, 0b0110, 0b1001, 0b1100]
        );
    }

    #[test]
    fn isolated_vertices_and_restriction() {
        let adj = graph(3, &[(0, 1)]);
        assert_eq!(sorted(maximal_cliques(0b111, &adj)), vec![0b011, 0b100]);
        // vertex 1 excluded: its edge must not leak in
        let adj = graph(3, &[]);
        assert_eq!(sorted(maximal_cliques(0b101, &adj)), vec![0b001, 0b100]);
        assert!(maximal_cliques(0, &adj).is_empty());
    }
}
