use super::{low_bits, Bits, Graph, MAX_ORDER};
use crate::error::{Error, Result};

fn combined_order(g: &Graph, h: &Graph) -> Result<usize> {
    let n = g.order() + h.order();
    if n > MAX_ORDER {
        return Err(Error::capacity(format!(
            "combined order {n} exceeds the cap of {MAX_ORDER}"
        )));
    }
    Ok(n)
}

/// Vertex-disjoint union; `h`'s vertices follow `g`'s.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph> {
    combined_order(g, h)?;
    let shift = g.order();
    let mut rows = g.rows().to_vec();
    rows.extend(h.rows().iter().map(|&r| r << shift));
    Ok(Graph::from_rows_unchecked(rows))
}

/// Join `g ∇ h`: the disjoint union plus every edge between the two sides.
pub fn join(g: &Graph, h: &Graph) -> Result<Graph> {
    let n = combined_order(g, h)?;
    let shift = g.order();
    let g_side = low_bits(shift);
    let h_side = low_bits(n) & !g_side;
    let mut rows = Vec::with_capacity(n);
    rows.extend(g.rows().iter().map(|&r| r | h_side));
    rows.extend(h.rows().iter().map(|&r| r << shift | g_side));
    Ok(Graph::from_rows_unchecked(rows))
}

/// Subgraph induced by the vertex mask `keep`, renumbered in increasing order.
pub fn induced_subgraph(g: &Graph, keep: u64) -> Graph {
    let keep = keep & g.vertex_mask();
    let kept: Vec<usize> = Bits(keep).collect();
    let rows = kept
        .iter()
        .map(|&v| {
            let nb = g.neighbors(v) & keep;
            kept.iter()
                .enumerate()
                .filter(|&(_, &u)| nb >> u & 1 == 1)
                .fold(0u64, |r, (i, _)| r | 1 << i)
        })
        .collect();
    Graph::from_rows_unchecked(rows)
}

/// `G - S`: the subgraph induced on the vertices outside `s`.
pub fn delete_vertices(g: &Graph, s: &[usize]) -> Result<Graph> {
    let mut drop = 0u64;
    for &v in s {
        if v >= g.order() {
            return Err(Error::input(format!(
                "vertex {v} out of range for order {}",
                g.order()
            )));
        }
        drop |= 1 << v;
    }
    Ok(induced_subgraph(g, g.vertex_mask() & !drop))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, cycle, empty, matching, path, petersen};

    #[test]
    fn join_examples() {
        let c4 = join(&empty(2).unwrap(), &empty(2).unwrap()).unwrap();
        assert!(c4.is_isomorphic(&cycle(4).unwrap()));
        let wheel = join(&complete(1).unwrap(), &cycle(5).unwrap()).unwrap();
        assert_eq!((wheel.order(), wheel.size()), (6, 10));
        let a = petersen();
        let b = cycle(7).unwrap();
        let j = join(&a, &b).unwrap();
        assert_eq!(j.size(), a.size() + b.size() + 70);
    }

    #[test]
    fn union_examples() {
        let k2 = complete(2).unwrap();
        let m2 = disjoint_union(&k2, &k2).unwrap();
        assert!(m2.is_isomorphic(&matching(2).unwrap()));
        let c5 = cycle(5).unwrap();
        assert_eq!(disjoint_union(&empty(0).unwrap(), &c5).unwrap(), c5);
        let k3 = complete(3).unwrap();
        let two = disjoint_union(&k3, &k3).unwrap();
        assert_eq!((two.order(), two.size()), (6, 6));
    }

    #[test]
    fn order_cap_is_enforced() {
        let big = empty(40).unwrap();
        assert!(matches!(join(&big, &big), Err(Error::Capacity(_))));
        assert!(matches!(disjoint_union(&big, &big), Err(Error::Capacity(_))));
    }

    #[test]
    fn deletion_examples() {
        let k4 = complete(4).unwrap();
        assert_eq!(delete_vertices(&k4, &[0]).unwrap(), complete(3).unwrap());
        let c5 = cycle(5).unwrap();
        assert!(delete_vertices(&c5, &[0]).unwrap().is_isomorphic(&path(4).unwrap()));
        let p = petersen();
        for v in 0..10 {
            let h = delete_vertices(&p, &[v]).unwrap();
            assert_eq!((h.order(), h.size()), (9, 12));
        }
        assert!(matches!(delete_vertices(&c5, &[5]), Err(Error::Input(_))));
    }
}
