//! Monochromatic subsets of complete edge colorings.
//!
//! Iterative majority-color greedy: pick the first active vertex, record the
//! most popular color among its edges into the active set, keep only that
//! color class, and repeat. Edges between picked vertices then carry the
//! earlier vertex's recorded color, so the largest class of recorded colors
//! (plus the final pick, which joins any class) is monochromatic. With D
//! colors and h+1 vertices the result has at least
//! max(1, floor(floor(log_D h) / D)) vertices.

use crate::error::ExtractError;

/// Guaranteed size for `n` vertices and `d_colors` colors.
pub fn monochromatic_bound(n: usize, d_colors: usize) -> usize {
    if n == 0 {
        return 0;
    }
    if d_colors <= 1 {
        return n;
    }
    let h = (n - 1).max(1) as f64;
    let log = h.ln() / (d_colors as f64).ln();
    ((log.floor() / d_colors as f64).floor() as usize).max(1)
}

/// Finds a monochromatic vertex subset of the complete graph on
/// 0..colors.len() whose edges are colored `colors[i][j]` in 1..=d_colors.
///
/// The coloring must be a complete symmetric matrix with in-range colors.
pub fn monochromatic_subset(
    colors: &[Vec<usize>],
    d_colors: usize,
) -> Result<Vec<usize>, ExtractError> {
    let n = colors.len();
    if d_colors < 1 {
        return Err(ExtractError::IncompleteColoring("need at least one color".into()));
    }
    for (i, row) in colors.iter().enumerate() {
        if row.len() != n {
            return Err(ExtractError::IncompleteColoring(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        for (j, &c) in row.iter().enumerate() {
            if i == j {
                continue;
            }
            if c < 1 || c > d_colors {
                return Err(ExtractError::IncompleteColoring(format!(
                    "color {c} at ({i},{j}) outside 1..={d_colors}"
                )));
            }
            if colors[j][i] != c {
                return Err(ExtractError::IncompleteColoring(format!(
                    "coloring not symmetric at ({i},{j})"
                )));
            }
        }
    }
    if n == 0 {
        return Ok(vec![]);
    }

    let mut active: Vec<usize> = (0..n).collect();
    let mut picked: Vec<(usize, Option<usize>)> = Vec::new();
    while !active.is_empty() {
        let v = active[0];
        let rest: Vec<usize> = active[1..].to_vec();
        if rest.is_empty() {
            picked.push((v, None));
            break;
        }
        let mut counts = vec![0usize; d_colors + 1];
        for &u in &rest {
            counts[colors[v][u]] += 1;
        }
        let majority = (1..=d_colors).max_by_key(|&c| (counts[c], usize::MAX - c)).unwrap();
        picked.push((v, Some(majority)));
        active = rest.into_iter().filter(|&u| colors[v][u] == majority).collect();
    }

    // Largest class among recorded colors; the last picked vertex joins it.
    let (last, _) = *picked.last().unwrap();
    let mut best: Vec<usize> = vec![last];
    for c in 1..=d_colors {
        let mut class: Vec<usize> =
            picked.iter().filter(|&&(_, col)| col == Some(c)).map(|&(v, _)| v).collect();
        if !class.is_empty() {
            class.push(last);
            if class.len() > best.len() {
                best = class;
            }
        }
    }
    best.sort_unstable();
    debug_assert!(is_monochromatic(colors, &best));
    Ok(best)
}

pub(crate) fn is_monochromatic(colors: &[Vec<usize>], subset: &[usize]) -> bool {
    let mut it = subset
        .iter()
        .enumerate()
        .flat_map(|(a, &i)| subset.iter().skip(a + 1).map(move |&j| colors[i][j]));
    match it.next() {
        None => true,
        Some(c) => it.all(|x| x == c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::reference::ref_max_monochromatic;

    fn complete_coloring(n: usize, f: impl Fn(usize, usize) -> usize) -> Vec<Vec<usize>> {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0 } else { f(i.min(j), i.max(j)) }).collect())
            .collect()
    }

    #[test]
    fn single_color_takes_everything() {
        let colors = complete_coloring(5, |_, _| 1);
        let s = monochromatic_subset(&colors, 1).unwrap();
        assert_eq!(s, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn k4_with_red_matching() {
        // K4 with the perfect matching {01, 23} red (1), the rest blue (2):
        // every triangle contains exactly one red edge, so the exhaustive
        // maximum monochromatic subset has size 2.
        let colors = complete_coloring(4, |i, j| {
            if (i, j) == (0, 1) || (i, j) == (2, 3) {
                1
            } else {
                2
            }
        });
        assert_eq!(ref_max_monochromatic(4, &|i, j| colors[i][j]), 2);
        let s = monochromatic_subset(&colors, 2).unwrap();
        assert!(is_monochromatic(&colors, &s));
        assert!(s.len() >= monochromatic_bound(4, 2));
        assert_eq!(s.len(), 2);

        // with only the single edge {01} red, the blue triangle {1,2,3}
        // (or {0,2,3}) appears and the exhaustive maximum is 3
        let colors = complete_coloring(4, |i, j| if (i, j) == (0, 1) { 1 } else { 2 });
        assert_eq!(ref_max_monochromatic(4, &|i, j| colors[i][j]), 3);
        let s = monochromatic_subset(&colors, 2).unwrap();
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn degenerate_many_colors() {
        // D >= h: a single vertex satisfies the bound
        let colors = complete_coloring(4, |i, j| i + j); // colors 1..=5
        let s = monochromatic_subset(&colors, 6).unwrap();
        assert!(s.len() >= monochromatic_bound(4, 6));
        assert!(is_monochromatic(&colors, &s));
    }

    #[test]
    fn greedy_meets_bound_on_random_colorings() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let n = rng.gen_range(2..=12);
            let d = rng.gen_range(1..=4);
            let mut colors = vec![vec![0usize; n]; n];
            for i in 0..n {
                for j in (i + 1)..n {
                    let c = rng.gen_range(1..=d);
                    colors[i][j] = c;
                    colors[j][i] = c;
                }
            }
            let s = monochromatic_subset(&colors, d).unwrap();
            assert!(is_monochromatic(&colors, &s));
            assert!(s.len() >= monochromatic_bound(n, d));
            assert!(s.len() <= ref_max_monochromatic(n, &|i, j| colors[i][j]));
        }
    }

    #[test]
    fn incomplete_colorings_are_rejected() {
        let mut colors = vec![vec![0, 1], vec![1, 0]];
        colors[0][1] = 7;
        assert!(matches!(
            monochromatic_subset(&colors, 2),
            Err(ExtractError::IncompleteColoring(_))
        ));
        let asym = vec![vec![0, 1], vec![2, 0]];
        assert!(matches!(
            monochromatic_subset(&asym, 2),
            Err(ExtractError::IncompleteColoring(_))
        ));
    }
}
