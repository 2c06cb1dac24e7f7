//! Mixed-radix bookkeeping for tensor factors.
//!
//! Tuples are flattened row-major: the first factor is the most significant
//! digit, matching the lexicographic order used by the JSON schema.

use super::FinSet;

pub(crate) fn sizes(factors: &[FinSet]) -> Vec<usize> {
    factors.iter().map(FinSet::len).collect()
}

pub(crate) fn product(sizes: &[usize]) -> usize {
    sizes.iter().product()
}

/// Row-major strides for the given digit sizes.
pub(crate) fn strides(sizes: &[usize]) -> Vec<usize> {
    let mut out = vec![1; sizes.len()];
    for i in (0..sizes.len().saturating_sub(1)).rev() {
        out[i] = out[i + 1] * sizes[i + 1];
    }
    out
}

pub(crate) fn decode(mut index: usize, sizes: &[usize], digits: &mut [usize]) {
    for i in (0..sizes.len()).rev() {
        digits[i] = index % sizes[i];
        index /= sizes[i];
    }
}

pub(crate) fn encode(digits: &[usize], sizes: &[usize]) -> usize {
    digits.iter().zip(sizes).fold(0, |acc, (&d, &s)| acc * s + d)
}

/// Sums a row-major table over every axis not in `keep`, returning the
/// table laid out in `keep` order.
pub(crate) fn project(data: &[f64], sizes: &[usize], keep: &[usize]) -> Vec<f64> {
    let out_sizes: Vec<usize> = keep.iter().map(|&k| sizes[k]).collect();
    let out_strides = strides(&out_sizes);
    // Stride that each source axis contributes to the output index.
    let mut contrib = vec![0usize; sizes.len()];
    for (pos, &axis) in keep.iter().enumerate() {
        contrib[axis] += out_strides[pos];
    }
    let mut out = vec![0.0; product(&out_sizes)];
    let mut digits = vec![0usize; sizes.len()];
    let mut target = 0usize;
    for &value in data {
        out[target] += value;
        // Odometer increment, updating the output index incrementally.
        for axis in (0..sizes.len()).rev() {
            digits[axis] += 1;
            target += contrib[axis];
            if digits[axis] < sizes[axis] {
                break;
            }
            target -= contrib[axis] * digits[axis];
            digits[axis] = 0;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_decode_agree() {
        let sizes = [2, 3, 4];
        let mut digits = [0; 3];
        for i in 0..24 {
            decode(i, &sizes, &mut digits);
            assert_eq!(encode(&digits, &sizes), i);
        }
        assert_eq!(strides(&sizes), vec![12, 4, 1]);
    }

    #[test]
    fn project_transposes_and_sums() {
        // t[a][b] with a in 0..2, b in 0..3
        let t: Vec<f64> = (0..6).map(f64::from).collect();
        assert_eq!(project(&t, &[2, 3], &[1, 0]), vec![0.0, 3.0, 1.0, 4.0, 2.0, 5.0]);
        assert_eq!(project(&t, &[2, 3], &[0]), vec![3.0, 12.0]);
        assert_eq!(project(&t, &[2, 3], &[]), vec![15.0]);
    }
}
