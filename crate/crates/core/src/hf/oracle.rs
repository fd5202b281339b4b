//! The set operations evaluated through their defining recursions on machine words.
//!
//! Each recursion peels the top bit: `b = 2^c + b'` with `b' < 2^c`. These exist to be
//! compared against the bit-level implementations.

fn split(b: u64) -> (u32, u64) {
    let c = 63 - b.leading_zeros();
    (c, b - (1u64 << c))
}

fn bit(c: u32, a: u64) -> bool {
    c < 64 && (a >> c) & 1 == 1
}

/// `binunion(a, 0) = a`; on `2^c + b'` adjoins `c` when `b' = 0`, otherwise unions the
/// top singleton then recurses on `b'`.
pub fn binunion(a: u64, b: u64) -> u64 {
    if b == 0 {
        return a;
    }
    let (c, rest) = split(b);
    if rest == 0 {
        if bit(c, a) {
            a
        } else {
            a + (1u64 << c)
        }
    } else {
        binunion(binunion(a, 1u64 << c), rest)
    }
}

pub fn bininter(a: u64, b: u64) -> u64 {
    if b == 0 {
        return 0;
    }
    let (c, rest) = split(b);
    if rest == 0 {
        if bit(c, a) {
            1u64 << c
        } else {
            0
        }
    } else {
        binunion(bininter(a, 1u64 << c), bininter(a, rest))
    }
}

/// `union(0) = 0`, `union(2^c + a') = binunion(c, union(a'))`.
pub fn union(a: u64) -> u64 {
    if a == 0 {
        return 0;
    }
    let (c, rest) = split(a);
    binunion(c as u64, union(rest))
}

/// `σ(0) = 0`, `σ(2^c + a') = 1 + σ(a')`.
pub fn sigma(a: u64) -> u64 {
    if a == 0 {
        0
    } else {
        1 + sigma(split(a).1)
    }
}

/// Member codes of `a`, found by repeated top-bit splitting.
pub fn members(mut a: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while a != 0 {
        let (c, rest) = split(a);
        out.push(c as u64);
        a = rest;
    }
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agrees_with_bit_ops_on_small_codes() {
        for a in 0..256u64 {
            for b in 0..256u64 {
                assert_eq!(binunion(a, b), a | b, "union {a} {b}");
                assert_eq!(bininter(a, b), a & b, "inter {a} {b}");
            }
            assert_eq!(sigma(a), a.count_ones() as u64);
        }
        assert_eq!(union(6), 3);
        assert_eq!(members(11), vec![0, 1, 3]);
    }
}
