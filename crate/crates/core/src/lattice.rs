use crate::error::CoreError;
use crate::params::Params;

/// Discretization of the group ℝ/TZ × ℝ³: a periodic box [-L, L)³ with `n` points per
/// axis and `2N + 1` equispaced time samples, together with the dual lattice
/// (temporal modes k ∈ {-N..N}, spatial frequencies ξ = (π/L)·m).
///
/// Both temporal and spatial mode axes are stored in FFT order: index `i` carries the
/// signed mode `i` for `i < len/2` (or `i <= N` in time) and `i - len` otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct Lattice {
    pub n_spatial: usize,
    pub n_temporal: usize,
    pub box_half_length: f64,
    pub period: f64,
    /// Spatial frequencies along one axis, FFT order (the 3D set is the tensor product).
    pub spatial_freqs: Vec<f64>,
    /// Temporal angular frequencies (2π/T)·k, FFT order.
    pub temporal_freqs: Vec<f64>,
    /// Physical coordinates along one axis: -L + i·h.
    pub physical_points: Vec<f64>,
    /// Time samples t_j = j·T/(2N+1).
    pub time_samples: Vec<f64>,
    /// Uniform spatial quadrature weight h³.
    pub weight: f64,
}

impl Lattice {
    pub fn n_time(&self) -> usize {
        2 * self.n_temporal + 1
    }

    /// Number of spatial lattice points (and spatial modes).
    pub fn n_space(&self) -> usize {
        self.n_spatial * self.n_spatial * self.n_spatial
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.box_half_length / self.n_spatial as f64
    }

    /// Volume (2L)³ of the periodic box.
    pub fn box_measure(&self) -> f64 {
        (2.0 * self.box_half_length).powi(3)
    }

    /// Signed spatial mode number of storage index `i`.
    pub fn spatial_mode(&self, i: usize) -> i64 {
        signed_mode(i, self.n_spatial)
    }

    /// Signed temporal mode number of storage index `i`.
    pub fn temporal_mode(&self, i: usize) -> i64 {
        let m = self.n_time();
        if i <= self.n_temporal {
            i as i64
        } else {
            i as i64 - m as i64
        }
    }

    /// Storage index of the signed temporal mode `k`.
    pub fn temporal_index(&self, k: i64) -> usize {
        let m = self.n_time() as i64;
        k.rem_euclid(m) as usize
    }

    /// Storage index of the signed spatial mode `m` along one axis.
    pub fn spatial_index(&self, m: i64) -> usize {
        m.rem_euclid(self.n_spatial as i64) as usize
    }

    /// Whether storage index `i` is the unpaired Nyquist mode of an axis.
    pub fn is_nyquist(&self, i: usize) -> bool {
        i == self.n_spatial / 2
    }

    /// Flat spatial index of (ix, iy, iz), lexicographic with z fastest.
    pub fn flat(&self, ix: usize, iy: usize, iz: usize) -> usize {
        (ix * self.n_spatial + iy) * self.n_spatial + iz
    }

    /// Inverse of [`Lattice::flat`].
    pub fn unflat(&self, p: usize) -> [usize; 3] {
        let n = self.n_spatial;
        [p / (n * n), (p / n) % n, p % n]
    }

    /// Full frequency vector ξ at a flat spatial mode index.
    pub fn xi(&self, p: usize) -> [f64; 3] {
        let [a, b, c] = self.unflat(p);
        [
            self.spatial_freqs[a],
            self.spatial_freqs[b],
            self.spatial_freqs[c],
        ]
    }

    /// Frequency vector used for spectral differentiation: components sitting on an
    /// axis Nyquist index are set to zero (the unpaired mode has no real derivative).
    pub fn deriv_xi(&self, p: usize) -> [f64; 3] {
        let idx = self.unflat(p);
        let mut out = [0.0; 3];
        for d in 0..3 {
            if !self.is_nyquist(idx[d]) {
                out[d] = self.spatial_freqs[idx[d]];
            }
        }
        out
    }

    /// Physical point x at a flat spatial index.
    pub fn point(&self, p: usize) -> [f64; 3] {
        let [a, b, c] = self.unflat(p);
        [
            self.physical_points[a],
            self.physical_points[b],
            self.physical_points[c],
        ]
    }

    /// Flat index of the spatial mode -m (the conjugate partner of `p`).
    pub fn conjugate_spatial(&self, p: usize) -> usize {
        let n = self.n_spatial;
        let [a, b, c] = self.unflat(p);
        self.flat((n - a) % n, (n - b) % n, (n - c) % n)
    }

    /// Storage index of temporal mode -k.
    pub fn conjugate_temporal(&self, it: usize) -> usize {
        let m = self.n_time();
        (m - it) % m
    }
}

fn signed_mode(i: usize, n: usize) -> i64 {
    if i < n / 2 {
        i as i64
    } else {
        i as i64 - n as i64
    }
}

/// Builds the lattice for validated parameters.
pub fn build_lattice(params: &Params) -> Result<Lattice, CoreError> {
    params.validate()?;
    let n = params.n_spatial;
    let l = params.box_half_length;
    let big_n = params.n_temporal;
    let m = 2 * big_n + 1;
    let dxi = std::f64::consts::PI / l;
    let spatial_freqs = (0..n).map(|i| dxi * signed_mode(i, n) as f64).collect();
    let omega = params.omega();
    let temporal_freqs = (0..m)
        .map(|i| {
            let k = if i <= big_n {
                i as i64
            } else {
                i as i64 - m as i64
            };
            omega * k as f64
        })
        .collect();
    let h = 2.0 * l / n as f64;
    let physical_points = (0..n).map(|i| -l + h * i as f64).collect();
    let time_samples = (0..m)
        .map(|j| params.period * j as f64 / m as f64)
        .collect();
    Ok(Lattice {
        n_spatial: n,
        n_temporal: big_n,
        box_half_length: l,
        period: params.period,
        spatial_freqs,
        temporal_freqs,
        physical_points,
        time_samples,
        weight: h * h * h,
    })
}
