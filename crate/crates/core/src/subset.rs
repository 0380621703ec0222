//! Index subsets: lexicographic k-combinations and `u32` bitmasks.

/// Iterator over the k-subsets of `0..n` in lexicographic order.
pub struct Combinations {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

pub fn combinations(n: usize, k: usize) -> Combinations {
    Combinations { n, current: (0..k).collect(), done: k > n }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let k = self.current.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] < self.n - k + i {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

pub fn mask_of(indices: &[usize]) -> u32 {
    indices.iter().fold(0u32, |m, &i| m | (1 << i))
}

pub fn indices_of(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask & (1 << i) != 0).collect()
}

/// All k-subsets of `0..n` as masks, in lexicographic order of index lists.
pub fn masks_of_size(n: usize, k: usize) -> impl Iterator<Item = u32> {
    combinations(n, k).map(|c| mask_of(&c))
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(5, 2).count(), 10);
        assert_eq!(combinations(8, 3).count(), 56);
        assert_eq!(combinations(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3).count(), 0);
        assert_eq!(
            combinations(4, 2).collect::<Vec<_>>(),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 2), 28);
        assert_eq!(binomial(10, 5), 252);
        assert_eq!(binomial(1, 2), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn masks_round_trip() {
        let m = mask_of(&[0, 3, 5]);
        assert_eq!(m, 0b101001);
        assert_eq!(indices_of(m), vec![0, 3, 5]);
    }
}
