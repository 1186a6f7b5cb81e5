//! Small integer helpers shared by the algebra modules.

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Canonical residue of `x` in `[0, m)`; `m == 0` leaves `x` unchanged.
pub fn reduce(x: i64, m: u64) -> i64 {
    if m == 0 {
        x
    } else {
        x.rem_euclid(m as i64)
    }
}

pub fn reduce_wide(x: i128, m: u64) -> i64 {
    if m == 0 {
        i64::try_from(x).expect("integer coefficient overflow")
    } else {
        x.rem_euclid(m as i128) as i64
    }
}

/// Canonical representative of `x` in `[0, n)`.
pub fn residue(x: i64, n: u32) -> u32 {
    x.rem_euclid(n as i64) as u32
}

/// Extended Euclid over signed integers: returns `(g, x, y)` with `a*x + b*y = g`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Inverse of `a` modulo `m`, if it exists. For `m == 1` the inverse is 0.
pub fn mod_inv(a: i64, m: u64) -> Option<u64> {
    if m == 0 {
        return None;
    }
    let m = m as i64;
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    (g == 1).then(|| x.rem_euclid(m) as u64)
}

/// Prime factorisation as `(p, e)` pairs in increasing order of `p`.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}
