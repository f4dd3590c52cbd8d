//! Exact linear algebra and univariate root counting.

mod matrix;
mod poly;

pub use matrix::Matrix;
pub use poly::{RootCount, UniPoly};

/// All `k`-subsets of `0..n` as increasing index lists, in colex order
/// (ordered by largest element, then next largest, ...).
pub fn subsets_colex(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn extend(n: usize, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(Vec::new());
            return;
        }
        // Subsets whose maximum is `top`, for increasing `top`.
        for top in k - 1..n {
            let mut smaller = Vec::new();
            extend(top, k - 1, &mut smaller);
            out.extend(smaller.into_iter().map(|mut s| {
                s.push(top);
                s
            }));
        }
    }
    let mut out = Vec::new();
    if k <= n {
        extend(n, k, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::subsets_colex;

    #[test]
    fn colex_order() {
        assert_eq!(
            subsets_colex(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(subsets_colex(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets_colex(2, 3).is_empty());
        assert_eq!(subsets_colex(6, 3).len(), 20);
    }
}
