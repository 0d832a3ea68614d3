//! Exhaustive kernel families: every set of distinct incidence rows over a
//! few loci, with varying numbers of copies.

mod common;

use decisive::coloring::verify_no_rainbow;
use decisive::nrc::nrc4;
use decisive::oracle::brute_force_nrc;
use decisive::reduce::{dedup, fpt_nrc4, incidence_matrix};
use decisive::NrcConfig;

use common::{pattern_from_rows, subsets};

fn check(rows: &[u32], k: usize, with_oracle: bool) {
    let p = pattern_from_rows(rows, k);
    let h = p.hypergraph();
    let cfg = NrcConfig::default();
    let fpt = fpt_nrc4(&p, &cfg).unwrap();
    let direct = nrc4(&h, &cfg).unwrap();
    assert_eq!(fpt.has_witness(), direct.has_witness(), "rows {rows:?}");
    if with_oracle {
        assert_eq!(fpt.has_witness(), brute_force_nrc(&h, 4, 14).unwrap().is_some(), "rows {rows:?}");
    }
    if let Some(w) = &fpt.witness {
        assert!(verify_no_rainbow(&h, w), "rows {rows:?}");
    }
}

/// All multiplicity vectors with entries in `1..=max` and total at most `cap`.
fn multiplicities(len: usize, max: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|m: Vec<usize>| {
                (1..=max).filter_map(move |c| {
                    let mut next = m.clone();
                    next.push(c);
                    (next.iter().sum::<usize>() <= cap).then_some(next)
                })
            })
            .collect();
    }
    out
}

#[test]
fn up_to_three_loci_with_copies() {
    let mut checked = 0;
    for k in 1..=3usize {
        let all_rows: Vec<u32> = (0..1u32 << k).collect();
        for size in 1..=all_rows.len() {
            for pick in subsets(all_rows.len(), size) {
                for mult in multiplicities(size, 3, 10) {
                    let rows: Vec<u32> = pick
                        .iter()
                        .zip(&mult)
                        .flat_map(|(&i, &m)| std::iter::repeat_n(all_rows[i], m))
                        .collect();
                    if rows.len() < 4 {
                        continue;
                    }
                    check(&rows, k, rows.len() <= 8);
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn four_loci_distinct_rows() {
    let all_rows: Vec<u32> = (0..16).collect();
    for size in 4..=10 {
        for pick in subsets(16, size) {
            let rows: Vec<u32> = pick.iter().map(|&i| all_rows[i]).collect();
            check(&rows, 4, size <= 7);
        }
    }
}

#[test]
fn spare_regimes_are_exercised() {
    // one spare: the reduced instance may be 3-colored but not 2-colored
    let rows = [0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100, 0b0011];
    let p = pattern_from_rows(&rows, 4);
    assert_eq!(dedup(&incidence_matrix(&p)).spares(), 1);
    check(&rows, 4, true);
    // no spares
    let rows = [0b0111, 0b1011, 0b1101, 0b1110, 0b1111];
    let p = pattern_from_rows(&rows, 4);
    assert_eq!(dedup(&incidence_matrix(&p)).spares(), 0);
    check(&rows, 4, true);
}
