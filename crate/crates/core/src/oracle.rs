//! Exhaustive reference search over all `r^n` color assignments.
//!
//! Nothing here is clever on purpose: the other solvers are tested against it.

use crate::coloring::Coloring;
use crate::{Error, Hypergraph, Result};

pub const DEFAULT_NODE_CAP: usize = 14;

fn check_cap(h: &Hypergraph, r: u8, node_cap: usize) -> Result<()> {
    if r == 0 || r > 16 {
        return Err(Error::InvalidInstance(format!("oracle supports 1..=16 colors, got {r}")));
    }
    if h.node_count() > node_cap {
        return Err(Error::SizeLimit { engine: "oracle", size: h.node_count(), cap: node_cap });
    }
    Ok(())
}

/// Visits every assignment in base-`r` counting order, node 0 most
/// significant, and stops early when `visit` returns `true`.
fn for_each_assignment(n: usize, r: u8, mut visit: impl FnMut(&[u8]) -> bool) {
    let mut colors = vec![1u8; n];
    loop {
        if visit(&colors) {
            return;
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if colors[pos] < r {
                colors[pos] += 1;
                break;
            }
            colors[pos] = 1;
        }
    }
}

fn is_no_rainbow(h: &Hypergraph, r: u8, colors: &[u8]) -> bool {
    let full = ((1u32 << r) - 1) << 1;
    let used = colors.iter().fold(0u32, |m, &c| m | 1 << c);
    if used != full {
        return false;
    }
    !h.edges().iter().any(|e| e.iter().fold(0u32, |m, &v| m | 1 << colors[v]) == full)
}

/// First surjective no-rainbow `r`-coloring in assignment order, if any.
pub fn brute_force_nrc(h: &Hypergraph, r: u8, node_cap: usize) -> Result<Option<Coloring>> {
    check_cap(h, r, node_cap)?;
    let mut found = None;
    for_each_assignment(h.node_count(), r, |colors| {
        if is_no_rainbow(h, r, colors) {
            found = Some(Coloring::from_solver(r, colors.to_vec()));
            true
        } else {
            false
        }
    });
    Ok(found)
}

/// Number of surjective no-rainbow `r`-colorings.
pub fn count_nrc(h: &Hypergraph, r: u8, node_cap: usize) -> Result<u64> {
    check_cap(h, r, node_cap)?;
    let mut count = 0;
    for_each_assignment(h.node_count(), r, |colors| {
        count += u64::from(is_no_rainbow(h, r, colors));
        false
    });
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::new(n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    #[test]
    fn single_quadruple() {
        assert_eq!(brute_force_nrc(&h(4, &[&[0, 1, 2, 3]]), 4, 14).unwrap(), None);
        assert_eq!(count_nrc(&h(4, &[&[0, 1, 2, 3]]), 4, 14).unwrap(), 0);
    }

    #[test]
    fn no_edges() {
        let c = brute_force_nrc(&h(4, &[]), 4, 14).unwrap().unwrap();
        assert_eq!(c.colors(), &[1, 2, 3, 4]);
        assert_eq!(count_nrc(&h(4, &[]), 4, 14).unwrap(), 24);
    }

    #[test]
    fn star_on_five_nodes() {
        let star = h(5, &[&[0, 1, 2, 3], &[0, 1, 2, 4], &[0, 1, 3, 4], &[0, 2, 3, 4]]);
        assert_eq!(brute_force_nrc(&star, 4, 14).unwrap(), None);
    }

    #[test]
    fn one_quadruple_on_five_nodes() {
        // 240 surjective colorings; the edge is rainbow in 24 * 4 of them.
        assert_eq!(count_nrc(&h(5, &[&[0, 1, 2, 3]]), 4, 14).unwrap(), 144);
    }

    #[test]
    fn cap_is_enforced() {
        let err = brute_force_nrc(&h(15, &[]), 4, 14).unwrap_err();
        assert_eq!(err, Error::SizeLimit { engine: "oracle", size: 15, cap: 14 });
    }
}
