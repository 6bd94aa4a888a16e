//! Reference computations used to cross-check the library. They share no
//! code with it beyond the accessor methods on the weight types.
#![allow(dead_code)]

use yb_groupoid::{Field, SixVertexMatrix};

/// Entry `<out|R|in>` of a six-vertex matrix, where `out = (x, y)` and
/// `in = (p, q)` are pairs of single-edge states.
pub fn entry<T: Field>(r: &SixVertexMatrix<T>, out: (usize, usize), inp: (usize, usize)) -> T {
    match (out, inp) {
        ((0, 0), (0, 0)) => r.a1().clone(),
        ((1, 1), (1, 1)) => r.a2().clone(),
        ((0, 1), (0, 1)) => r.c1().clone(),
        ((0, 1), (1, 0)) => r.b1().clone(),
        ((1, 0), (0, 1)) => r.b2().clone(),
        ((1, 0), (1, 0)) => r.c2().clone(),
        _ => T::zero(),
    }
}

/// `R_12`, `R_23` on three tensor factors, as a function of bit triples.
fn r12<T: Field>(r: &SixVertexMatrix<T>, o: [usize; 3], i: [usize; 3]) -> T {
    if o[2] != i[2] {
        return T::zero();
    }
    entry(r, (o[0], o[1]), (i[0], i[1]))
}

fn r23<T: Field>(r: &SixVertexMatrix<T>, o: [usize; 3], i: [usize; 3]) -> T {
    if o[0] != i[0] {
        return T::zero();
    }
    entry(r, (o[1], o[2]), (i[1], i[2]))
}

fn bits(k: usize) -> [usize; 3] {
    [(k >> 2) & 1, (k >> 1) & 1, k & 1]
}

/// Every entry of `u_12 w_23 v_12 - v_23 w_12 u_23`, summed index by index.
pub fn ybe_residual<T: Field>(u: &SixVertexMatrix<T>, w: &SixVertexMatrix<T>, v: &SixVertexMatrix<T>) -> Vec<T> {
    let mut out = Vec::with_capacity(64);
    for o in 0..8 {
        for i in 0..8 {
            let (o3, i3) = (bits(o), bits(i));
            let mut acc = T::zero();
            for x in 0..8 {
                let x3 = bits(x);
                let (l1, r1) = (r12(u, o3, x3), r23(v, o3, x3));
                if l1.is_zero() && r1.is_zero() {
                    continue;
                }
                for y in 0..8 {
                    let y3 = bits(y);
                    if !l1.is_zero() {
                        acc = acc + l1.clone() * r23(w, x3, y3) * r12(v, y3, i3);
                    }
                    if !r1.is_zero() {
                        acc = acc - r1.clone() * r12(w, x3, y3) * r23(u, y3, i3);
                    }
                }
            }
            out.push(acc);
        }
    }
    out
}

pub fn ybe_oracle<T: Field>(u: &SixVertexMatrix<T>, w: &SixVertexMatrix<T>, v: &SixVertexMatrix<T>) -> bool {
    ybe_residual(u, w, v).iter().all(|x| x.is_zero())
}

/// Star by its defining formulas: `a_i* = detB / a_i`, b negated, c swapped.
pub fn star_oracle<T: Field>(u: &SixVertexMatrix<T>) -> SixVertexMatrix<T> {
    let det = u.c1().clone() * u.c2().clone() - u.b1().clone() * u.b2().clone();
    SixVertexMatrix::new(
        det.clone() / u.a1().clone(),
        det / u.a2().clone(),
        -u.b1().clone(),
        -u.b2().clone(),
        u.c2().clone(),
        u.c1().clone(),
    )
    .unwrap()
}

/// Free-fermionic matrix of `(g, c1)`: `a1 = g00, b2 = -g01, b1 = g10,
/// a2 = g11`, `c2 = det(g) / c1`.
pub fn ff_oracle<T: Field>(g: &[[T; 2]; 2], c1: &T) -> SixVertexMatrix<T> {
    let det = g[0][0].clone() * g[1][1].clone() - g[0][1].clone() * g[1][0].clone();
    SixVertexMatrix::new(
        g[0][0].clone(),
        g[1][1].clone(),
        g[1][0].clone(),
        -g[0][1].clone(),
        c1.clone(),
        det / c1.clone(),
    )
    .unwrap()
}

/// Vertex weight with edges (west, south, east, north).
pub fn vertex<T: Field>(r: &SixVertexMatrix<T>, w: u8, s: u8, e: u8, n: u8) -> T {
    entry(r, (e as usize, n as usize), (s as usize, w as usize))
}

/// Partition function by plain iteration over every assignment of the
/// interior edges. `west`/`east` are `None` for a periodic row closure.
pub fn naive_partition<T: Field>(
    grid: &[Vec<SixVertexMatrix<T>>],
    ends: Option<(&[u8], &[u8])>,
    south: &[u8],
    north: &[u8],
) -> T {
    let (m, n) = (grid.len(), grid[0].len());
    // Horizontal edges h[i][k], k = 0..=n; vertical v[r][j], r = 0..=m
    // with r = 0 the top.
    let h_free: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| {
            let ks: Vec<usize> = if ends.is_some() { (1..n).collect() } else { (0..n).collect() };
            ks.into_iter().map(move |k| (i, k))
        })
        .collect();
    let v_free: Vec<(usize, usize)> = (1..m).flat_map(|r| (0..n).map(move |j| (r, j))).collect();
    let total_free = h_free.len() + v_free.len();
    let mut z = T::zero();
    for mask in 0u64..(1 << total_free) {
        let mut h = vec![vec![0u8; n + 1]; m];
        let mut v = vec![vec![0u8; n]; m + 1];
        v[0] = north.to_vec();
        v[m] = south.to_vec();
        if let Some((west, east)) = ends {
            for i in 0..m {
                h[i][0] = west[i];
                h[i][n] = east[i];
            }
        }
        for (b, &(i, k)) in h_free.iter().enumerate() {
            h[i][k] = ((mask >> b) & 1) as u8;
        }
        for (b, &(r, j)) in v_free.iter().enumerate() {
            v[r][j] = ((mask >> (h_free.len() + b)) & 1) as u8;
        }
        if ends.is_none() {
            for row in h.iter_mut() {
                row[n] = row[0];
            }
        }
        let mut prod = T::one();
        for i in 0..m {
            for j in 0..n {
                prod = prod * vertex(&grid[i][j], h[i][j], v[i + 1][j], h[i][j + 1], v[i][j]);
            }
        }
        z = z + prod;
    }
    z
}
