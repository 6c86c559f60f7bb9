//! Polynomial gcd over Z[u][v] by primitive pseudo-remainder sequences.
//! Used only to bring rational functions to lowest terms.

use super::bilaurent::BiLaurent;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

type UPoly = Vec<BigInt>;
type BPoly = Vec<UPoly>;

fn trim(p: &mut UPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn u_mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    trim(&mut r);
    r
}

fn u_sub(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let mut r: UPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect();
    trim(&mut r);
    r
}

fn u_content(a: &UPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn u_div_int(a: &UPoly, c: &BigInt) -> UPoly {
    a.iter().map(|x| x / c).collect()
}

fn u_pp(a: &UPoly) -> UPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut c = u_content(a);
    if a.last().unwrap().is_negative() {
        c = -c;
    }
    u_div_int(a, &c)
}

fn u_prem(a: &UPoly, b: &UPoly) -> UPoly {
    let mut r = a.clone();
    let lc = b.last().unwrap().clone();
    while !r.is_empty() && r.len() >= b.len() {
        let d = r.len() - b.len();
        let lr = r.last().unwrap().clone();
        let mut next: UPoly = r.iter().map(|x| x * &lc).collect();
        for (j, y) in b.iter().enumerate() {
            next[j + d] -= &lr * y;
        }
        trim(&mut next);
        r = next;
    }
    r
}

fn u_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() {
        return u_pp(b).into_iter().map(|x| x * u_content(b)).collect();
    }
    if b.is_empty() {
        return u_pp(a).into_iter().map(|x| x * u_content(a)).collect();
    }
    let g = u_content(a).gcd(&u_content(b));
    let (mut x, mut y) = (u_pp(a), u_pp(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = u_prem(&x, &y);
        x = y;
        y = u_pp(&r);
    }
    u_pp(&x).into_iter().map(|c| c * &g).collect()
}

/// Exact division in Z[u]; None when it does not divide.
fn u_div(a: &UPoly, b: &UPoly) -> Option<UPoly> {
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    let lc = b.last().unwrap();
    while !r.is_empty() && r.len() >= b.len() {
        let d = r.len() - b.len();
        let (c, rem) = r.last().unwrap().div_rem(lc);
        if !rem.is_zero() {
            return None;
        }
        for (j, y) in b.iter().enumerate() {
            r[j + d] -= &c * y;
        }
        q[d] = c;
        trim(&mut r);
    }
    if r.is_empty() {
        trim(&mut q);
        Some(q)
    } else {
        None
    }
}

fn b_trim(p: &mut BPoly) {
    while p.last().is_some_and(|c| c.is_empty()) {
        p.pop();
    }
}

fn b_content(a: &BPoly) -> UPoly {
    a.iter().fold(Vec::new(), |g, c| u_gcd(&g, c))
}

fn b_div_u(a: &BPoly, c: &UPoly) -> BPoly {
    a.iter().map(|x| u_div(x, c).expect("content divides")).collect()
}

fn b_pp(a: &BPoly) -> BPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut c = b_content(a);
    let lead = a.last().unwrap();
    if lead.last().unwrap().is_negative() {
        c = c.into_iter().map(|x| -x).collect();
    }
    b_div_u(a, &c)
}

fn b_prem(a: &BPoly, b: &BPoly) -> BPoly {
    let mut r = a.clone();
    let lc = b.last().unwrap().clone();
    while !r.is_empty() && r.len() >= b.len() {
        let d = r.len() - b.len();
        let lr = r.last().unwrap().clone();
        let mut next: BPoly = r.iter().map(|x| u_mul(x, &lc)).collect();
        for (j, y) in b.iter().enumerate() {
            next[j + d] = u_sub(&next[j + d], &u_mul(&lr, y));
        }
        b_trim(&mut next);
        r = next;
    }
    r
}

fn b_gcd(a: &BPoly, b: &BPoly) -> BPoly {
    if a.is_empty() {
        return b.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    let g = u_gcd(&b_content(a), &b_content(b));
    let (mut x, mut y) = (b_pp(a), b_pp(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = b_prem(&x, &y);
        x = y;
        y = b_pp(&r);
    }
    b_pp(&x).iter().map(|c| u_mul(c, &g)).collect()
}

fn to_bpoly(p: &BiLaurent, shift: (i64, i64)) -> BPoly {
    let mut out: BPoly = Vec::new();
    for ((a, b), c) in p.terms() {
        let (u, v) = ((a - shift.0) as usize, (b - shift.1) as usize);
        if out.len() <= v {
            out.resize(v + 1, Vec::new());
        }
        if out[v].len() <= u {
            out[v].resize(u + 1, BigInt::zero());
        }
        out[v][u] = c.clone();
    }
    out
}

fn from_bpoly(p: &BPoly) -> BiLaurent {
    let mut r = BiLaurent::zero();
    for (v, cu) in p.iter().enumerate() {
        for (u, c) in cu.iter().enumerate() {
            r.add_term(u as i64, v as i64, c.clone());
        }
    }
    r
}

/// A gcd of two Laurent polynomials, defined up to a unit.
pub fn gcd(a: &BiLaurent, b: &BiLaurent) -> BiLaurent {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let pa = to_bpoly(a, a.min_exps().unwrap());
    let pb = to_bpoly(b, b.min_exps().unwrap());
    from_bpoly(&b_gcd(&pa, &pb))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_of_products() {
        let f = BiLaurent::from_terms([((1, 0), 1), ((0, 1), 1), ((0, 0), 3)]);
        let g = BiLaurent::from_terms([((2, 0), 2), ((0, 3), -1)]);
        let h = BiLaurent::from_terms([((0, 2), 1), ((1, 1), 5), ((0, 0), -1)]);
        let a = &f * &g;
        let b = &f * &h;
        let d = gcd(&a, &b);
        assert!(d.divide_exact(&f).is_ok());
        assert!(f.divide_exact(&d).is_ok());
    }

    #[test]
    fn coprime_gives_unit() {
        let f = BiLaurent::from_terms([((1, 0), 1), ((0, 0), 1)]);
        let g = BiLaurent::from_terms([((0, 1), 1), ((0, 0), 1)]);
        assert!(gcd(&f, &g).is_unit());
    }
}
