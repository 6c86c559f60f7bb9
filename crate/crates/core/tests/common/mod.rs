#![allow(dead_code)]

use symknot::Diagram;

pub fn fixture(name: &str) -> Diagram {
    let path = format!("{}/fixtures/{name}.sud", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    Diagram::parse(&text).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn d4() -> Diagram {
    fixture("d4")
}

pub fn d4_prime() -> Diagram {
    fixture("d4prime")
}

/// Unknot with a single crossing on the axis.
pub fn axis_kink() -> Diagram {
    fixture("u1_axis_kink")
}

/// Standard trefoil, no axis data.
pub fn trefoil() -> Diagram {
    Diagram::parse(
        r#"{"free_loops": [], "crossings": [
        {"id": 1, "edges": [1, 5, 2, 4]},
        {"id": 2, "edges": [3, 1, 4, 6]},
        {"id": 3, "edges": [5, 3, 6, 2]}], "orientation": []}"#,
    )
    .unwrap()
}

/// The trefoil whose three crossings are positive.
pub fn positive_trefoil() -> Diagram {
    let t = trefoil();
    if t.writhe().total() > 0 {
        t
    } else {
        t.mirror_image()
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Determinant by cofactor expansion along the first row.
pub fn laplace_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut total = 0;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let sub: Vec<Vec<i128>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| *v).collect()).collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][j] * laplace_det(&sub);
    }
    total
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// gcd of all k×k minors.
pub fn minors_gcd(m: &[Vec<i128>], k: usize) -> i128 {
    let (r, c) = (m.len(), m.first().map_or(0, |x| x.len()));
    let mut g = 0;
    for rows in combinations(r, k) {
        for cols in combinations(c, k) {
            let sub: Vec<Vec<i128>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
            g = gcd(g, laplace_det(&sub));
        }
    }
    g
}

/// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1}.
pub fn smith_by_minors(m: &[Vec<i128>]) -> Vec<i128> {
    let n = m.len().min(m.first().map_or(0, |x| x.len()));
    let mut out = Vec::new();
    let mut prev = 1;
    for k in 1..=n {
        let dk = minors_gcd(m, k);
        if dk == 0 {
            out.push(0);
            continue;
        }
        out.push(dk / prev);
        prev = dk;
    }
    out
}

/// Kauffman bracket straight from the PD code: A-smoothing joins e0-e1 and e2-e3.
/// Returns exponent of A -> coefficient.
pub fn pd_bracket(d: &Diagram) -> std::collections::BTreeMap<i64, i64> {
    let sud = d.to_sud();
    let n = sud.crossings.len();
    let edges = 2 * n;
    let mut out = std::collections::BTreeMap::new();
    let extra = sud.free_loops.len();
    if n == 0 {
        // delta^(m-1)
        let mut p = std::collections::BTreeMap::from([(0i64, 1i64)]);
        for _ in 1..extra {
            let mut q = std::collections::BTreeMap::new();
            for (e, c) in &p {
                *q.entry(e + 2).or_insert(0) -= c;
                *q.entry(e - 2).or_insert(0) -= c;
            }
            p = q;
        }
        return p;
    }
    for mask in 0u64..(1 << n) {
        let mut parent: Vec<usize> = (0..=edges).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut join = |a: i64, b: i64| {
            let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
            parent[ra] = rb;
        };
        let mut a_count = 0i64;
        for (i, x) in sud.crossings.iter().enumerate() {
            let [e0, e1, e2, e3] = x.edges;
            if mask >> i & 1 == 0 {
                a_count += 1;
                join(e0, e1);
                join(e2, e3);
            } else {
                join(e0, e3);
                join(e1, e2);
            }
        }
        let loops = (1..=edges).filter(|&e| find(&mut parent, e) == e).count() + extra;
        // A^(a - b) * delta^(loops - 1)
        let mut p = std::collections::BTreeMap::from([(a_count - (n as i64 - a_count), 1i64)]);
        for _ in 1..loops {
            let mut q = std::collections::BTreeMap::new();
            for (e, c) in &p {
                *q.entry(e + 2).or_insert(0) -= c;
                *q.entry(e - 2).or_insert(0) -= c;
            }
            p = q;
        }
        for (e, c) in p {
            *out.entry(e).or_insert(0) += c;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}
