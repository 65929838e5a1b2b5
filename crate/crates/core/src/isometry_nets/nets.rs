//! Nets on `O(n)` and grid coverings of balls.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{frobenius_sq, orthogonal_gap, random_orthogonal, Isometry};
use crate::error::{invalid, Error, Result};
use crate::geom_core::{Ball, Vector};

/// Szarek's constant bound `3πe^π < 220` for nets on `O(n)`.
pub const SZAREK_CONSTANT: f64 = 220.0;
const MAX_GRID_POINTS: usize = 10_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NetCertificate {
    Deterministic,
    /// `trials` consecutive Haar probes, `failures` of which were uncovered.
    Probabilistic { trials: usize, failures: usize },
}

/// Finite family of isometries with a claimed covering radius `delta`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsometryNet {
    pub dim: usize,
    pub delta: f64,
    pub elements: Vec<Isometry>,
    pub certificate: NetCertificate,
}

impl IsometryNet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Whether some element's orthogonal part is within `delta` of `a` in
    /// operator norm.
    pub fn covers_matrix(&self, a: &DMatrix<f64>, delta: f64) -> bool {
        covered(self.elements.iter().map(|e| e.matrix()), a, delta)
    }

    /// Smallest operator-norm gap between `a` and the orthogonal parts.
    pub fn nearest_matrix_gap(&self, a: &DMatrix<f64>) -> f64 {
        let n = a.nrows() as f64;
        let mut cands: Vec<(f64, &DMatrix<f64>)> = self
            .elements
            .iter()
            .map(|e| (frobenius_sq(e.matrix(), a), e.matrix()))
            .collect();
        cands.sort_by(|x, y| x.0.total_cmp(&y.0));
        let mut best = f64::INFINITY;
        for (fro_sq, m) in cands {
            // ‖·‖_op ≥ ‖·‖_F / √n
            if (fro_sq / n).sqrt() >= best {
                break;
            }
            best = best.min(orthogonal_gap(m, a));
        }
        best
    }
}

fn covered<'a>(elements: impl Iterator<Item = &'a DMatrix<f64>>, a: &DMatrix<f64>, delta: f64) -> bool {
    let n = a.nrows() as f64;
    let d2 = delta * delta;
    let mut pending = Vec::new();
    for m in elements {
        let f = frobenius_sq(m, a);
        if f <= d2 {
            return true;
        }
        if f <= d2 * n {
            pending.push((f, m));
        }
    }
    pending.sort_by(|x, y| x.0.total_cmp(&y.0));
    pending.into_iter().any(|(_, m)| orthogonal_gap(m, a) <= delta)
}

/// `ln(2 (220/δ)^{n(n-1)/2})`, the size bound for minimal `δ`-nets in `O(n)`.
pub fn ln_szarek_bound(n: usize, delta: f64) -> f64 {
    let k = (n * n.saturating_sub(1)) as f64 / 2.0;
    2f64.ln() + k * (SZAREK_CONSTANT / delta).ln()
}

#[derive(Clone, Copy, Debug)]
pub struct NetOptions {
    /// Consecutive covered probes required by the greedy construction.
    pub trials: usize,
    pub max_elements: usize,
}

impl Default for NetOptions {
    fn default() -> Self {
        Self {
            trials: 10_000,
            max_elements: 100_000,
        }
    }
}

pub fn build_orthogonal_net<R: Rng + ?Sized>(n: usize, delta: f64, rng: &mut R) -> Result<IsometryNet> {
    build_orthogonal_net_with(n, delta, NetOptions::default(), rng)
}

/// A `delta`-net of `O(n)` in operator norm for `1 ≤ n ≤ 6`.
///
/// Dimensions 1 to 3 use explicit grids with a proven covering radius; 4 to
/// 6 use greedy insertion of Haar samples until `opts.trials` consecutive
/// probes are covered.
pub fn build_orthogonal_net_with<R: Rng + ?Sized>(
    n: usize,
    delta: f64,
    opts: NetOptions,
    rng: &mut R,
) -> Result<IsometryNet> {
    if !(delta > 0.0 && delta < 2.0) {
        return Err(invalid("delta", format!("must lie in (0, 2), got {delta}")));
    }
    let (matrices, certificate) = match n {
        1 => (
            vec![DMatrix::from_element(1, 1, 1.0), DMatrix::from_element(1, 1, -1.0)],
            NetCertificate::Deterministic,
        ),
        2 => (planar_grid(delta), NetCertificate::Deterministic),
        3 => (quaternion_grid(delta), NetCertificate::Deterministic),
        4..=6 => greedy_net(n, delta, opts, rng)?,
        _ => {
            return Err(Error::UnsupportedDimension {
                n,
                what: "orthogonal nets",
            })
        }
    };
    let elements = matrices
        .into_iter()
        .map(|m| Isometry::from_parts(m, Vector::zeros(n)))
        .collect();
    Ok(IsometryNet {
        dim: n,
        delta,
        elements,
        certificate,
    })
}

/// Rotations at spacing `θ = 2 asin(δ/2)` and their reflected coset.
fn planar_grid(delta: f64) -> Vec<DMatrix<f64>> {
    let theta = 2.0 * (delta / 2.0).asin();
    let count = (2.0 * PI / theta).ceil() as usize;
    let mut out = Vec::with_capacity(2 * count);
    for reflect in [false, true] {
        for k in 0..count {
            let (s, c) = (2.0 * PI * k as f64 / count as f64).sin_cos();
            let m = if reflect {
                DMatrix::from_row_slice(2, 2, &[c, s, s, -c])
            } else {
                DMatrix::from_row_slice(2, 2, &[c, -s, s, c])
            };
            out.push(m);
        }
    }
    out
}

/// Unit quaternions from a cubic grid on the four positive faces of
/// `[-1, 1]^4`, plus the reflected coset.
///
/// For a grid of spacing `h` a unit quaternion is within angle
/// `asin(h√3/2)` of a grid direction, so rotations are within
/// `2 sin(angle) ≤ h√3` in operator norm; `h = δ/√3`.
fn quaternion_grid(delta: f64) -> Vec<DMatrix<f64>> {
    let h = delta / 3f64.sqrt();
    let m = (2.0 / h).ceil() as usize + 1;
    let step = 2.0 / (m - 1) as f64;
    let coord = |i: usize| if i == m - 1 { 1.0 } else { -1.0 + step * i as f64 };
    let mut rotations = Vec::new();
    for face in 0..4 {
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let others = [coord(a), coord(b), coord(c)];
                    let mut q = [0.0; 4];
                    let mut k = 0;
                    for (slot, q_slot) in q.iter_mut().enumerate() {
                        if slot == face {
                            *q_slot = 1.0;
                        } else {
                            *q_slot = others[k];
                            k += 1;
                        }
                    }
                    // Points shared with an earlier face are already present.
                    if (0..face).any(|j| q[j] == 1.0) {
                        continue;
                    }
                    rotations.push(quaternion_to_matrix(q));
                }
            }
        }
    }
    let reflect = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 1.0, -1.0]));
    let reflected: Vec<_> = rotations.iter().map(|r| r * &reflect).collect();
    rotations.extend(reflected);
    rotations
}

fn quaternion_to_matrix(q: [f64; 4]) -> DMatrix<f64> {
    let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let [w, x, y, z] = q.map(|c| c / norm);
    DMatrix::from_row_slice(
        3,
        3,
        &[
            1.0 - 2.0 * (y * y + z * z),
            2.0 * (x * y - w * z),
            2.0 * (x * z + w * y),
            2.0 * (x * y + w * z),
            1.0 - 2.0 * (x * x + z * z),
            2.0 * (y * z - w * x),
            2.0 * (x * z - w * y),
            2.0 * (y * z + w * x),
            1.0 - 2.0 * (x * x + y * y),
        ],
    )
}

fn greedy_net<R: Rng + ?Sized>(
    n: usize,
    delta: f64,
    opts: NetOptions,
    rng: &mut R,
) -> Result<(Vec<DMatrix<f64>>, NetCertificate)> {
    let mut net: Vec<DMatrix<f64>> = vec![DMatrix::identity(n, n)];
    let mut streak = 0usize;
    let mut draws = 0usize;
    while streak < opts.trials {
        let a = random_orthogonal(n, rng);
        draws += 1;
        if covered(net.iter(), &a, delta) {
            streak += 1;
        } else {
            if net.len() >= opts.max_elements {
                return Err(Error::NonConvergence {
                    what: "greedy orthogonal net",
                    iterations: draws,
                });
            }
            net.push(a);
            streak = 0;
        }
    }
    Ok((
        net,
        NetCertificate::Probabilistic {
            trials: opts.trials,
            failures: 0,
        },
    ))
}

/// Centers of a cubic grid of pitch `2ρ/√n` through `v.center`, clipped to
/// `v` inflated by `ρ`. Every point of `v` lies within `ρ` of a center.
pub fn build_translation_cover(v: &Ball, rho: f64) -> Result<Vec<Vector>> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(invalid("rho", format!("must be positive, got {rho}")));
    }
    if v.radius <= rho {
        return Ok(vec![v.center.clone()]);
    }
    let n = v.dim();
    let pitch = 2.0 * rho / (n as f64).sqrt();
    let reach = v.radius + rho;
    let k = (reach / pitch).floor() as i64;
    let side = (2 * k + 1) as usize;
    match side.checked_pow(n as u32) {
        Some(total) if total <= MAX_GRID_POINTS => {}
        _ => return Err(invalid("rho", "translation grid too large")),
    }
    let mut out = Vec::new();
    let mut idx = vec![-k; n];
    loop {
        let offset: Vec<f64> = idx.iter().map(|&i| i as f64 * pitch).collect();
        let r2: f64 = offset.iter().map(|x| x * x).sum();
        if r2.sqrt() <= reach {
            out.push(Vector::from_raw(
                offset.iter().zip(v.center.coords()).map(|(o, c)| o + c).collect(),
            ));
        }
        let mut d = 0;
        loop {
            if d == n {
                return Ok(out);
            }
            idx[d] += 1;
            if idx[d] <= k {
                break;
            }
            idx[d] = -k;
            d += 1;
        }
    }
}
