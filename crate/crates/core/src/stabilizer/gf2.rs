/// Packed GF(2) row of `bits` columns.
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

#[inline]
pub(crate) fn get(words: &[u64], i: usize) -> bool {
    (words[i / 64] >> (i % 64)) & 1 == 1
}

#[inline]
pub(crate) fn set(words: &mut [u64], i: usize, v: bool) {
    let mask = 1u64 << (i % 64);
    if v {
        words[i / 64] |= mask;
    } else {
        words[i / 64] &= !mask;
    }
}

/// Rank over GF(2). The rows are reduced in place.
pub(crate) fn rank(rows: &mut [Vec<u64>], columns: usize) -> usize {
    let mut pivot = 0;
    for col in 0..columns {
        if pivot == rows.len() {
            break;
        }
        let Some(found) = (pivot..rows.len()).find(|&r| get(&rows[r], col)) else {
            continue;
        };
        rows.swap(pivot, found);
        let (head, tail) = rows.split_at_mut(pivot + 1);
        let p = &head[pivot];
        for row in tail.iter_mut() {
            if get(row, col) {
                for (w, pw) in row.iter_mut().zip(p) {
                    *w ^= pw;
                }
            }
        }
        pivot += 1;
    }
    pivot
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(bits: &str) -> Vec<u64> {
        let mut w = vec![0; words_for(bits.len())];
        for (i, c) in bits.chars().enumerate() {
            set(&mut w, i, c == '1');
        }
        w
    }

    #[test]
    fn rank_of_small_matrices() {
        let mut m = vec![row("110"), row("011"), row("101")];
        assert_eq!(rank(&mut m, 3), 2);
        let mut id = vec![row("100"), row("010"), row("001")];
        assert_eq!(rank(&mut id, 3), 3);
        let mut empty: Vec<Vec<u64>> = vec![];
        assert_eq!(rank(&mut empty, 4), 0);
    }

    #[test]
    fn rank_across_word_boundary() {
        let mut a = vec![0u64; 2];
        let mut b = vec![0u64; 2];
        set(&mut a, 70, true);
        set(&mut b, 70, true);
        set(&mut b, 3, true);
        let mut m = vec![a, b];
        assert_eq!(rank(&mut m, 128), 2);
    }
}
