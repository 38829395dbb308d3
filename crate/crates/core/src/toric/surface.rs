use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point = [i64; 2];

/// A complete smooth toric surface given by its rays in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricSurface {
    rays: Vec<Point>,
}

/// A torus-invariant divisor `Σ a_ρ D_ρ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TDivisor(pub Vec<i64>);

/// Ranks of `H^0, H^1, H^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Cohomology {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
}

impl Cohomology {
    pub fn euler(&self) -> i64 {
        self.h0 as i64 - self.h1 as i64 + self.h2 as i64
    }

    pub fn higher_vanish(&self) -> bool {
        self.h1 == 0 && self.h2 == 0
    }

    pub fn as_vec(&self) -> [usize; 3] {
        [self.h0, self.h1, self.h2]
    }
}

impl TDivisor {
    pub fn zero(n: usize) -> Self {
        TDivisor(vec![0; n])
    }

    pub fn ray(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        TDivisor(v)
    }

    pub fn scale(&self, k: i64) -> Self {
        TDivisor(self.0.iter().map(|a| a * k).collect())
    }

    pub fn l1(&self) -> i64 {
        self.0.iter().map(|a| a.abs()).sum()
    }
}

impl Add for &TDivisor {
    type Output = TDivisor;
    fn add(self, o: &TDivisor) -> TDivisor {
        TDivisor(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &TDivisor {
    type Output = TDivisor;
    fn sub(self, o: &TDivisor) -> TDivisor {
        TDivisor(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &TDivisor {
    type Output = TDivisor;
    fn neg(self) -> TDivisor {
        TDivisor(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for TDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> =
            self.0.iter().enumerate().filter(|(_, a)| **a != 0).map(|(i, a)| format!("{a}D{}", i + 1)).collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

fn det(a: Point, b: Point) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn dot(m: Point, u: Point) -> i64 {
    m[0] * u[0] + m[1] * u[1]
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl ToricSurface {
    /// Validates primitivity, counterclockwise order, smoothness
    /// (consecutive rays form a basis) and completeness (one full turn).
    pub fn new(rays: Vec<Point>) -> Result<Self> {
        let n = rays.len();
        if n < 3 {
            return Err(Error::InvalidFan("a complete fan needs at least three rays".into()));
        }
        for r in &rays {
            if gcd(r[0], r[1]) != 1 {
                return Err(Error::InvalidFan(format!("ray {r:?} is not primitive")));
            }
        }
        let mut turn = 0.0;
        for i in 0..n {
            let (a, b) = (rays[i], rays[(i + 1) % n]);
            if det(a, b) != 1 {
                return Err(Error::InvalidFan(format!(
                    "rays {a:?}, {b:?} do not span a smooth cone in counterclockwise order"
                )));
            }
            let ang = (b[1] as f64).atan2(b[0] as f64) - (a[1] as f64).atan2(a[0] as f64);
            turn += ang.rem_euclid(std::f64::consts::TAU);
        }
        if (turn - std::f64::consts::TAU).abs() > 1e-6 {
            return Err(Error::InvalidFan("rays wind around the origin more than once".into()));
        }
        Ok(ToricSurface { rays })
    }

    pub fn p2() -> Self {
        Self::new(vec![[1, 0], [0, 1], [-1, -1]]).expect("P² fan")
    }

    /// The Hirzebruch surface `F₁ = Bl_p P²`.
    pub fn f1() -> Self {
        Self::new(vec![[1, 0], [0, 1], [-1, 1], [0, -1]]).expect("F₁ fan")
    }

    pub fn rays(&self) -> &[Point] {
        &self.rays
    }

    pub fn n_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn divisor(&self, coeffs: Vec<i64>) -> Result<TDivisor> {
        if coeffs.len() != self.n_rays() {
            return Err(Error::DimensionMismatch(format!("{} coefficients for {} rays", coeffs.len(), self.n_rays())));
        }
        Ok(TDivisor(coeffs))
    }

    /// `D_i² = −b_i` where `u_{i−1} + u_{i+1} = b_i u_i`.
    pub fn self_intersection(&self, i: usize) -> i64 {
        let n = self.n_rays();
        let (p, q, u) = (self.rays[(i + n - 1) % n], self.rays[(i + 1) % n], self.rays[i]);
        let s = [p[0] + q[0], p[1] + q[1]];
        let b = if u[0] != 0 { s[0] / u[0] } else { s[1] / u[1] };
        -b
    }

    fn ray_intersection(&self, i: usize, j: usize) -> i64 {
        let n = self.n_rays();
        if i == j {
            self.self_intersection(i)
        } else if (i + 1) % n == j || (j + 1) % n == i {
            1
        } else {
            0
        }
    }

    pub fn intersection(&self, d: &TDivisor, e: &TDivisor) -> i64 {
        let n = self.n_rays();
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                s += d.0[i] * e.0[j] * self.ray_intersection(i, j);
            }
        }
        s
    }

    pub fn canonical(&self) -> TDivisor {
        TDivisor(vec![-1; self.n_rays()])
    }

    /// Lattice points of `{m : ⟨m, u_ρ⟩ ≥ −D_ρ}`, sorted.
    pub fn lattice_points(&self, d: &TDivisor) -> Vec<Point> {
        let n = self.n_rays();
        // Every vertex is an intersection of two boundary lines.
        let (mut lo, mut hi) = ([i64::MAX; 2], [i64::MIN; 2]);
        for i in 0..n {
            for j in (i + 1)..n {
                let (u, v) = (self.rays[i], self.rays[j]);
                let dt = det(u, v);
                if dt == 0 {
                    continue;
                }
                // ⟨m, u⟩ = −D_i, ⟨m, v⟩ = −D_j.
                let (a, b) = (-d.0[i], -d.0[j]);
                let x = (a * v[1] - b * u[1]) as f64 / dt as f64;
                let y = (u[0] * b - v[0] * a) as f64 / dt as f64;
                lo = [lo[0].min(x.floor() as i64), lo[1].min(y.floor() as i64)];
                hi = [hi[0].max(x.ceil() as i64), hi[1].max(y.ceil() as i64)];
            }
        }
        let mut pts = Vec::new();
        for x in lo[0]..=hi[0] {
            for y in lo[1]..=hi[1] {
                let m = [x, y];
                if (0..n).all(|r| dot(m, self.rays[r]) >= -d.0[r]) {
                    pts.push(m);
                }
            }
        }
        pts
    }

    pub fn h0(&self, d: &TDivisor) -> usize {
        self.lattice_points(d).len()
    }

    /// `χ(O(D)) = 1 + D·(D − K)/2`.
    pub fn euler_characteristic(&self, d: &TDivisor) -> i64 {
        let dk = d - &self.canonical();
        1 + self.intersection(d, &dk) / 2
    }

    /// `h0` by lattice points, `h2` by Serre duality, `h1` by Riemann–Roch.
    pub fn cohomology(&self, d: &TDivisor) -> Cohomology {
        let h0 = self.h0(d);
        let h2 = self.h0(&(&self.canonical() - d));
        let chi = self.euler_characteristic(d);
        let h1 = h0 as i64 + h2 as i64 - chi;
        debug_assert!(h1 >= 0, "negative h1 for {d}");
        Cohomology { h0, h1: h1.max(0) as usize, h2 }
    }

    /// Sections of `O(D)` restricted to the curve `D_ρ ≅ P¹`: points on the
    /// line `⟨m, u_ρ⟩ = −D_ρ` within the two neighbouring half-planes.
    pub fn curve_points(&self, rho: usize, d: &TDivisor) -> Vec<Point> {
        let n = self.n_rays();
        let (prev, next) = ((rho + n - 1) % n, (rho + 1) % n);
        let u = self.rays[rho];
        // Solve along the line: m = m0 + t·w with w ⊥ u.
        let w = [-u[1], u[0]];
        let m0 = particular_solution(u, -d.0[rho]);
        let mut ts = Vec::new();
        // Range of t from the two neighbour inequalities (each is a bound in t).
        let (mut lo, mut hi) = (i64::MIN, i64::MAX);
        for r in [prev, next] {
            let c = dot(w, self.rays[r]);
            let rhs = -d.0[r] - dot(m0, self.rays[r]);
            // c·t ≥ rhs
            match c.signum() {
                1 => lo = lo.max(div_ceil(rhs, c)),
                -1 => hi = hi.min(div_floor(rhs, c)),
                _ => {
                    if rhs > 0 {
                        return Vec::new();
                    }
                }
            }
        }
        if lo <= hi {
            for t in lo..=hi {
                ts.push([m0[0] + t * w[0], m0[1] + t * w[1]]);
            }
        }
        ts.sort_unstable();
        ts
    }

    /// Degree of `O(D)` on the curve `D_ρ`.
    pub fn degree_on(&self, rho: usize, d: &TDivisor) -> i64 {
        self.intersection(d, &TDivisor::ray(self.n_rays(), rho))
    }

    /// The unique ray whose curve has self-intersection −1, if any.
    pub fn exceptional_ray(&self) -> Option<usize> {
        let c: Vec<usize> = (0..self.n_rays()).filter(|&i| self.self_intersection(i) == -1).collect();
        (c.len() == 1).then(|| c[0])
    }
}

/// `P¹` cohomology `(h0, h1)` of `O(d)`.
pub fn p1_cohomology(d: i64) -> (usize, usize) {
    ((d + 1).max(0) as usize, (-d - 1).max(0) as usize)
}

fn div_floor(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -div_floor(-a, b)
}

/// Some integer `m` with `⟨m, u⟩ = c` for primitive `u`.
fn particular_solution(u: Point, c: i64) -> Point {
    // Extended Euclid on (u0, u1).
    fn ext(a: i64, b: i64) -> (i64, i64, i64) {
        if b == 0 {
            (a, 1, 0)
        } else {
            let (g, x, y) = ext(b, a.rem_euclid(b));
            (g, y, x - a.div_euclid(b) * y)
        }
    }
    let (g, x, y) = ext(u[0], u[1]);
    [x * c / g, y * c / g]
}
