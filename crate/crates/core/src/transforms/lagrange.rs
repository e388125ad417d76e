//! Lagrange interpolation kernel of even order on the unit-spaced grid.
//!
//! Lambda(s) is the weight of the sample at offset 0 when interpolating at s;
//! it is supported on [-H, H] and vanishes at the non-zero integers.

/// Half width H of the support.
pub const HALF_WIDTH: usize = 6;
/// Number of interpolation points, 2H.
pub const POINTS: usize = 2 * HALF_WIDTH;

// stencil nodes 1-H..H
fn node(i: usize) -> f64 {
    i as f64 + 1.0 - HALF_WIDTH as f64
}

// basis polynomial l_i on the stencil, product form
fn basis(i: usize, sigma: f64) -> f64 {
    let xi = node(i);
    let mut v = 1.0;
    for k in 0..POINTS {
        if k != i {
            v *= (sigma - node(k)) / (xi - node(k));
        }
    }
    v
}

/// Lambda(s).
pub fn weight(s: f64) -> f64 {
    if s.abs() >= HALF_WIDTH as f64 {
        return 0.0;
    }
    let fl = s.floor();
    let sigma = s - fl;
    // the sample sits at stencil node -floor(s)
    let i = (HALF_WIDTH as f64 - 1.0 - fl) as usize;
    basis(i, sigma)
}

/// Monomial coefficients of Lambda on piece j (s in [j-H, j-H+1]) in sigma = s - (j - H).
pub fn piece_coefficients() -> [[f64; POINTS]; POINTS] {
    let mut out = [[0.0; POINTS]; POINTS];
    for (j, row) in out.iter_mut().enumerate() {
        // floor(s) = j - H, stencil node H - j -> index 2H - 1 - j
        let i = POINTS - 1 - j;
        let xi = node(i);
        let mut poly = vec![1.0];
        let mut denom = 1.0;
        for k in 0..POINTS {
            if k == i {
                continue;
            }
            let xk = node(k);
            denom *= xi - xk;
            let mut next = vec![0.0; poly.len() + 1];
            for (p, c) in poly.iter().enumerate() {
                next[p + 1] += c;
                next[p] -= c * xk;
            }
            poly = next;
        }
        for (p, c) in poly.iter().enumerate() {
            row[p] = c / denom;
        }
    }
    out
}
