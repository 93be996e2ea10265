//! Exact modular integer, vector, and matrix arithmetic.
//!
//! Every residue is stored canonically in `[0, n)`. Products are computed
//! in 128-bit width and reduced immediately, so the arithmetic is exact
//! for any modulus below 2^62; there is no silent wraparound anywhere.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest modulus accepted. Keeps `i64 -> u64` canonicalisation and all
/// 128-bit intermediate products exact.
pub const MAX_MODULUS: u64 = 1 << 62;

// ---------------------------------------------------------------------------
// Scalar helpers
// ---------------------------------------------------------------------------

/// Greatest common divisor (Euclid).
pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b > 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// `a * b mod n` without overflow.
#[inline]
pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// `base^exp mod n` by square-and-multiply.
pub fn pow_mod(base: u64, mut exp: u64, n: u64) -> u64 {
    let mut base = base % n;
    let mut acc = 1 % n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

/// Canonical residue of a signed integer modulo `n`.
pub fn canonical(value: i64, n: u64) -> u64 {
    debug_assert!((1..=MAX_MODULUS).contains(&n));
    value.rem_euclid(n as i64) as u64
}

/// Deterministic primality test by trial division.
///
/// Exact for the full `u64` range; intended for desk-scale inputs
/// (below 2^32 it is instantaneous).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Euler's totient: the count of `1 <= j <= n` with `gcd(j, n) = 1`.
///
/// Computed from the trial-division factorisation of `n`.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi requires n >= 1");
    let mut remaining = n;
    let mut phi = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= remaining {
        if remaining % p == 0 {
            phi -= phi / p;
            while remaining % p == 0 {
                remaining /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if remaining > 1 {
        phi -= phi / remaining;
    }
    phi
}

/// Multiplicative order of `a` modulo `n`, by direct iteration.
///
/// Returns the least `t >= 1` with `a^t = 1 (mod n)`. `a` is reduced
/// before the gcd check; `gcd(a, n) != 1` is a domain error.
pub fn mult_order(a: u64, n: Modulus) -> Result<u64> {
    let n = n.get();
    let a = a % n;
    if gcd(a, n) != 1 {
        return Err(Error::Domain(format!(
            "multiplicative order undefined: gcd({a}, {n}) != 1"
        )));
    }
    let mut x = a;
    for t in 1..=n {
        if x == 1 {
            return Ok(t);
        }
        x = mul_mod(x, a, n);
    }
    // The order divides phi(n) < n, so the loop above always returns.
    Err(Error::Internal(format!(
        "order of {a} mod {n} not found within n iterations"
    )))
}

// ---------------------------------------------------------------------------
// Modulus
// ---------------------------------------------------------------------------

/// A modulus `n >= 2` for the cyclic group `Z_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("modulus must be >= 2, got {n}")));
        }
        if n > MAX_MODULUS {
            return Err(Error::Domain(format!("modulus {n} exceeds 2^62")));
        }
        Ok(Self(n))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl std::fmt::Display for Modulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

// ---------------------------------------------------------------------------
// ModVector
// ---------------------------------------------------------------------------

/// A vector over `Z_n` with canonical coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModVector {
    modulus: Modulus,
    coords: Vec<u64>,
}

impl ModVector {
    pub fn new(coords: &[i64], modulus: Modulus) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Domain("vector dimension must be >= 1".into()));
        }
        let n = modulus.get();
        Ok(Self {
            modulus,
            coords: coords.iter().map(|&c| canonical(c, n)).collect(),
        })
    }

    pub fn from_residues(coords: Vec<u64>, modulus: Modulus) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Domain("vector dimension must be >= 1".into()));
        }
        if let Some(&c) = coords.iter().find(|&&c| c >= modulus.get()) {
            return Err(Error::Domain(format!(
                "coordinate {c} is not a canonical residue mod {modulus}"
            )));
        }
        Ok(Self { modulus, coords })
    }

    pub fn zero(dim: usize, modulus: Modulus) -> Self {
        Self {
            modulus,
            coords: vec![0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    /// Coordinatewise sum.
    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs.modulus, rhs.dim())?;
        let n = self.modulus.get();
        Ok(Self {
            modulus: self.modulus,
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(&a, &b)| (a + b) % n)
                .collect(),
        })
    }

    /// Coordinatewise scalar multiple.
    pub fn scale(&self, s: u64) -> Self {
        let n = self.modulus.get();
        Self {
            modulus: self.modulus,
            coords: self.coords.iter().map(|&c| mul_mod(c, s % n, n)).collect(),
        }
    }

    fn check_compatible(&self, modulus: Modulus, dim: usize) -> Result<()> {
        if self.modulus != modulus {
            return Err(Error::Contract(format!(
                "modulus mismatch: {} vs {}",
                self.modulus, modulus
            )));
        }
        if self.dim() != dim {
            return Err(Error::Contract(format!(
                "dimension mismatch: {} vs {}",
                self.dim(),
                dim
            )));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// IntMatrix — a matrix over Z, prior to reduction
// ---------------------------------------------------------------------------

/// A square integer matrix, as supplied by a caller before reduction
/// modulo anything. Used where an operation spans several moduli or
/// needs exact integer linear algebra (determinants, adjugates).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Domain("matrix dimension must be >= 1".into()));
        }
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Domain("matrix must be square".into()));
        }
        Ok(Self {
            dim,
            entries: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain("matrix dimension must be >= 1".into()));
        }
        let mut entries = vec![0i64; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    /// Exact determinant over the integers.
    pub fn det(&self) -> i128 {
        det_i128(&self.entries.iter().map(|&e| e as i128).collect::<Vec<_>>(), self.dim)
    }

    /// Reduce every entry to its canonical residue.
    pub fn reduce(&self, modulus: Modulus) -> ModMatrix {
        let n = modulus.get();
        ModMatrix {
            modulus,
            dim: self.dim,
            entries: self.entries.iter().map(|&e| canonical(e, n)).collect(),
        }
    }
}

/// Determinant by cofactor expansion along the first row.
///
/// O(dim!) — intended for the small dimensions this crate works with.
pub(crate) fn det_i128(entries: &[i128], dim: usize) -> i128 {
    if dim == 1 {
        return entries[0];
    }
    if dim == 2 {
        return entries[0] * entries[3] - entries[1] * entries[2];
    }
    let mut det = 0i128;
    let mut minor = vec![0i128; (dim - 1) * (dim - 1)];
    for col in 0..dim {
        for r in 1..dim {
            let mut mc = 0;
            for c in 0..dim {
                if c == col {
                    continue;
                }
                minor[(r - 1) * (dim - 1) + mc] = entries[r * dim + c];
                mc += 1;
            }
        }
        let cofactor = entries[col] * det_i128(&minor, dim - 1);
        if col % 2 == 0 {
            det += cofactor;
        } else {
            det -= cofactor;
        }
    }
    det
}

/// Adjugate (transposed cofactor matrix) over the integers, so that
/// `m * adj(m) = det(m) * I` exactly.
pub(crate) fn adjugate_i128(entries: &[i128], dim: usize) -> Vec<i128> {
    if dim == 1 {
        return vec![1];
    }
    let mut adj = vec![0i128; dim * dim];
    let mut minor = vec![0i128; (dim - 1) * (dim - 1)];
    for row in 0..dim {
        for col in 0..dim {
            let mut mr = 0;
            for r in 0..dim {
                if r == row {
                    continue;
                }
                let mut mc = 0;
                for c in 0..dim {
                    if c == col {
                        continue;
                    }
                    minor[mr * (dim - 1) + mc] = entries[r * dim + c];
                    mc += 1;
                }
                mr += 1;
            }
            let cof = det_i128(&minor, dim - 1);
            let sign = if (row + col) % 2 == 0 { 1 } else { -1 };
            // Transposed: cofactor of (row, col) lands at (col, row).
            adj[col * dim + row] = sign * cof;
        }
    }
    adj
}

// ---------------------------------------------------------------------------
// ModMatrix — the move matrix
// ---------------------------------------------------------------------------

/// An `m x m` matrix over `Z_n` with canonical entries. This is the move
/// matrix: it acts on column vectors, sending `x` to `M x^T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    modulus: Modulus,
    dim: usize,
    entries: Vec<u64>,
}

impl ModMatrix {
    /// Build from signed rows, canonicalising every entry.
    pub fn new(rows: &[Vec<i64>], modulus: Modulus) -> Result<Self> {
        Ok(IntMatrix::new(rows)?.reduce(modulus))
    }

    pub fn identity(dim: usize, modulus: Modulus) -> Result<Self> {
        Ok(IntMatrix::identity(dim)?.reduce(modulus))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn entry(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, &e)| {
            let (r, c) = (i / self.dim, i % self.dim);
            e == u64::from(r == c)
        })
    }

    /// Apply the matrix to a vector: returns `M x^T` with canonical
    /// coordinates.
    pub fn apply(&self, x: &ModVector) -> Result<ModVector> {
        x.check_compatible(self.modulus, self.dim)?;
        let n = self.modulus.get();
        let coords = (0..self.dim)
            .map(|r| {
                let mut acc = 0u64;
                for c in 0..self.dim {
                    acc = (acc + mul_mod(self.entry(r, c), x.coords[c], n)) % n;
                }
                acc
            })
            .collect();
        Ok(ModVector {
            modulus: self.modulus,
            coords,
        })
    }

    /// Matrix product, reduced entrywise.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.modulus != rhs.modulus {
            return Err(Error::Contract(format!(
                "modulus mismatch: {} vs {}",
                self.modulus, rhs.modulus
            )));
        }
        if self.dim != rhs.dim {
            return Err(Error::Contract(format!(
                "dimension mismatch: {} vs {}",
                self.dim, rhs.dim
            )));
        }
        let n = self.modulus.get();
        let d = self.dim;
        let mut entries = vec![0u64; d * d];
        for r in 0..d {
            for c in 0..d {
                let mut acc = 0u64;
                for k in 0..d {
                    acc = (acc + mul_mod(self.entry(r, k), rhs.entry(k, c), n)) % n;
                }
                entries[r * d + c] = acc;
            }
        }
        Ok(Self {
            modulus: self.modulus,
            dim: d,
            entries,
        })
    }

    /// `M^e` by square-and-multiply; `M^0` is the identity.
    pub fn pow(&self, e: u64) -> Self {
        let mut result = Self::identity(self.dim, self.modulus).expect("dim >= 1");
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same shape");
            }
            base = base.mul(&base).expect("same shape");
            e >>= 1;
        }
        result
    }

    /// Determinant reduced to a canonical residue mod `n`.
    ///
    /// Cofactor expansion uses only additions and multiplications, so it
    /// is valid for composite moduli.
    pub fn det_mod(&self) -> u64 {
        let n = self.modulus.get();
        det_mod_inner(&self.entries, self.dim, n)
    }

    /// The `Z_n`-order with the default power cap `min(n^(m^2), 10^7)`.
    pub fn zn_order(&self) -> Option<u64> {
        self.zn_order_capped(self.default_order_cap())
    }

    /// Least `k <= cap` with `M^k = I`, or `None` if no such power exists
    /// up to the cap.
    ///
    /// If `gcd(det M, n) != 1` the matrix is not invertible mod `n` and no
    /// finite order exists; this is detected immediately. For the sub-add
    /// matrix with odd `n`, the order divides `4 * ord(-4 mod n)`, so only
    /// divisors of that bound are tested.
    pub fn zn_order_capped(&self, cap: u64) -> Option<u64> {
        assert!(cap >= 1, "order cap must be >= 1");
        let n = self.modulus.get();
        if gcd(self.det_mod(), n) != 1 {
            return None;
        }
        if self.is_subadd() && n % 2 == 1 {
            let t = mult_order(canonical(-4, n), self.modulus)
                .expect("gcd(-4, n) = 1 for odd n");
            let bound = 4 * t;
            for d in sorted_divisors(bound) {
                if d > cap {
                    return None;
                }
                if self.pow(d).is_identity() {
                    return Some(d);
                }
            }
            return None;
        }
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.mul(self).expect("same shape");
        }
        None
    }

    fn default_order_cap(&self) -> u64 {
        let n = self.modulus.get();
        let exp = (self.dim * self.dim) as u32;
        let bound = n.checked_pow(exp).unwrap_or(u64::MAX);
        bound.min(10_000_000)
    }

    /// True when this is the sub-add matrix `[[1, -1], [1, 1]]` reduced
    /// mod `n`.
    pub fn is_subadd(&self) -> bool {
        let n = self.modulus.get();
        self.dim == 2 && self.entries == [1 % n, n - 1, 1 % n, 1 % n]
    }
}

fn det_mod_inner(entries: &[u64], dim: usize, n: u64) -> u64 {
    if dim == 1 {
        return entries[0] % n;
    }
    if dim == 2 {
        let ad = mul_mod(entries[0], entries[3], n);
        let bc = mul_mod(entries[1], entries[2], n);
        return (ad + n - bc) % n;
    }
    let mut det = 0u64;
    let mut minor = vec![0u64; (dim - 1) * (dim - 1)];
    for col in 0..dim {
        for r in 1..dim {
            let mut mc = 0;
            for c in 0..dim {
                if c == col {
                    continue;
                }
                minor[(r - 1) * (dim - 1) + mc] = entries[r * dim + c];
                mc += 1;
            }
        }
        let cof = mul_mod(entries[col], det_mod_inner(&minor, dim - 1, n), n);
        det = if col % 2 == 0 {
            (det + cof) % n
        } else {
            (det + n - cof) % n
        };
    }
    det
}

/// All divisors of `n`, ascending.
pub(crate) fn sorted_divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    fn modulus(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn subadd(n: u64) -> ModMatrix {
        ModMatrix::new(&[vec![1, -1], vec![1, 1]], modulus(n)).unwrap()
    }

    fn perm3(n: u64) -> ModMatrix {
        ModMatrix::new(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]], modulus(n)).unwrap()
    }

    /// Oracle: matrix power by naive repeated multiplication.
    fn pow_naive(m: &ModMatrix, e: u64) -> ModMatrix {
        let mut acc = ModMatrix::identity(m.dim(), m.modulus()).unwrap();
        for _ in 0..e {
            acc = acc.mul(m).unwrap();
        }
        acc
    }

    /// Oracle: totient by direct gcd count.
    fn phi_naive(n: u64) -> u64 {
        (1..=n).filter(|&j| gcd(j, n) == 1).count() as u64
    }

    #[test]
    fn modulus_rejects_small_values() {
        assert!(Modulus::new(0).is_err());
        assert!(Modulus::new(1).is_err());
        assert!(Modulus::new(2).is_ok());
    }

    #[test]
    fn canonicalisation_of_negative_entries() {
        let m = subadd(5);
        assert_eq!(m.rows(), vec![vec![1, 4], vec![1, 1]]);
    }

    #[test]
    fn apply_subadd_mod_5() {
        // (a, b) -> (a - b, a + b): (1, 2) -> (-1, 3) = (4, 3) mod 5.
        let m = subadd(5);
        let x = ModVector::new(&[1, 2], modulus(5)).unwrap();
        assert_eq!(m.apply(&x).unwrap().coords(), &[4, 3]);
    }

    #[test]
    fn apply_fixes_zero_vector() {
        let m = subadd(7);
        let zero = ModVector::zero(2, modulus(7));
        assert_eq!(m.apply(&zero).unwrap(), zero);
    }

    #[test]
    fn apply_perm3_example_arc() {
        let m = perm3(3);
        let x = ModVector::new(&[1, 0, 0], modulus(3)).unwrap();
        assert_eq!(m.apply(&x).unwrap().coords(), &[0, 1, 0]);
        let y = ModVector::new(&[0, 0, 1], modulus(3)).unwrap();
        assert_eq!(m.apply(&y).unwrap().coords(), &[1, 0, 0]);
    }

    #[test]
    fn apply_rejects_mismatched_operands() {
        let m = subadd(5);
        let wrong_mod = ModVector::new(&[1, 2], modulus(7)).unwrap();
        assert!(matches!(m.apply(&wrong_mod), Err(Error::Contract(_))));
        let wrong_dim = ModVector::new(&[1, 2, 3], modulus(5)).unwrap();
        assert!(matches!(m.apply(&wrong_dim), Err(Error::Contract(_))));
    }

    #[test]
    fn pow_subadd_fourth_power_is_minus_four_identity() {
        // M^4 = -4I. Mod 5 that is the identity; mod 3 it is 2I.
        assert!(subadd(5).pow(4).is_identity());
        let m3 = subadd(3).pow(4);
        assert_eq!(m3.rows(), vec![vec![2, 0], vec![0, 2]]);
        // Against the naive-multiplication oracle.
        assert_eq!(subadd(5).pow(4), pow_naive(&subadd(5), 4));
        assert_eq!(m3, pow_naive(&subadd(3), 4));
    }

    #[test]
    fn pow_zero_is_identity() {
        assert!(subadd(9).pow(0).is_identity());
        assert!(perm3(4).pow(0).is_identity());
    }

    #[test]
    fn pow_matches_naive_oracle() {
        for n in [2u64, 3, 5, 6, 12] {
            let m = subadd(n);
            for e in 0..20 {
                assert_eq!(m.pow(e), pow_naive(&m, e), "n={n} e={e}");
            }
        }
    }

    #[test]
    fn zn_order_perm3_is_3() {
        assert_eq!(perm3(5).zn_order(), Some(3));
        assert_eq!(perm3(2).zn_order(), Some(3));
    }

    #[test]
    fn zn_order_subadd_mod_3_is_8() {
        assert_eq!(subadd(3).zn_order(), Some(8));
    }

    #[test]
    fn zn_order_subadd_mod_4_is_absent() {
        // det M = 2 shares a factor with 4.
        assert_eq!(subadd(4).zn_order(), None);
        // Confirm no low power is the identity either.
        let m = subadd(4);
        for k in 1..=256 {
            assert!(!m.pow(k).is_identity());
        }
    }

    #[test]
    fn zn_order_fast_path_agrees_with_iteration() {
        for n in (3u64..40).step_by(2) {
            let m = subadd(n);
            let fast = m.zn_order();
            // Plain incremental search, independent of the divisor shortcut.
            let mut acc = m.clone();
            let mut slow = None;
            for k in 1..=100_000u64 {
                if acc.is_identity() {
                    slow = Some(k);
                    break;
                }
                acc = acc.mul(&m).unwrap();
            }
            assert_eq!(fast, slow, "n={n}");
        }
    }

    #[test]
    fn zn_order_respects_cap() {
        assert_eq!(subadd(3).zn_order_capped(7), None);
        assert_eq!(subadd(3).zn_order_capped(8), Some(8));
    }

    #[test]
    fn subadd_fourth_power_is_minus_four_identity_for_all_odd_n() {
        for n in (3u64..100).step_by(2) {
            let m4 = subadd(n).pow(4);
            let scalar = canonical(-4, n);
            let expected =
                ModMatrix::new(&[vec![scalar as i64, 0], vec![0, scalar as i64]], modulus(n))
                    .unwrap();
            assert_eq!(m4, expected, "n={n}");
        }
    }

    #[test]
    fn zn_order_is_minimal() {
        for (m, k) in [(subadd(3), 8), (subadd(5), 4), (perm3(5), 3), (perm3(2), 3)] {
            assert!(m.pow(k).is_identity());
            for j in 1..k {
                assert!(!m.pow(j).is_identity(), "premature identity at {j} < {k}");
            }
        }
    }

    #[test]
    fn mult_order_examples() {
        // -4 = 1 mod 5 has order 1; -4 = 2 mod 3 has order 2.
        assert_eq!(mult_order(canonical(-4, 5), modulus(5)).unwrap(), 1);
        assert_eq!(mult_order(canonical(-4, 3), modulus(3)).unwrap(), 2);
        assert_eq!(mult_order(1, modulus(17)).unwrap(), 1);
    }

    #[test]
    fn mult_order_rejects_non_units() {
        assert!(matches!(mult_order(2, modulus(4)), Err(Error::Domain(_))));
        assert!(matches!(mult_order(0, modulus(5)), Err(Error::Domain(_))));
    }

    #[test]
    fn euler_phi_matches_direct_count() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(9), 6);
        assert_eq!(euler_phi(12), 4);
        for n in 1..=200 {
            assert_eq!(euler_phi(n), phi_naive(n), "n={n}");
        }
    }

    #[test]
    fn primality_small_values() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
    }

    #[test]
    fn det_mod_agrees_with_integer_det() {
        let rows = vec![vec![2, -1, 3], vec![0, 4, 1], vec![5, 2, -2]];
        let int = IntMatrix::new(&rows).unwrap();
        for n in [3u64, 5, 7, 12] {
            let m = int.reduce(modulus(n));
            let expected = int.det().rem_euclid(n as i128) as u64;
            assert_eq!(m.det_mod(), expected, "n={n}");
        }
    }

    #[test]
    fn adjugate_times_matrix_is_det_times_identity() {
        let rows = vec![vec![1, 2, 0], vec![0, 1, 3], vec![4, 0, 1]];
        let m = IntMatrix::new(&rows).unwrap();
        let det = m.det();
        let entries: Vec<i128> = m.entries.iter().map(|&e| e as i128).collect();
        let adj = adjugate_i128(&entries, 3);
        for r in 0..3 {
            for c in 0..3 {
                let mut acc = 0i128;
                for k in 0..3 {
                    acc += adj[r * 3 + k] * entries[k * 3 + c];
                }
                assert_eq!(acc, if r == c { det } else { 0 });
            }
        }
    }

    #[test]
    fn sorted_divisors_ascending() {
        assert_eq!(sorted_divisors(1), vec![1]);
        assert_eq!(sorted_divisors(8), vec![1, 2, 4, 8]);
        assert_eq!(sorted_divisors(36), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
    }

    #[test]
    fn vector_add_and_scale() {
        let n = modulus(5);
        let x = ModVector::new(&[3, 4], n).unwrap();
        let y = ModVector::new(&[4, 2], n).unwrap();
        assert_eq!(x.add(&y).unwrap().coords(), &[2, 1]);
        assert_eq!(x.scale(3).coords(), &[4, 2]);
    }
}
