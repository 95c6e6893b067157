//! Band-structured permutations of row (or column) indices.
//!
//! A [`BandPermutation`] permutes the rows inside each band and permutes the
//! bands themselves. For a box of edge `b` these form the wreath product
//! `S_b ≀ S_b` of order `(b!)^(b+1)`, which is 1296 for ordinary Sudoku.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// Largest supported block edge.
pub const MAX_BLOCK: usize = 3;
/// Largest supported grid edge (`MAX_BLOCK²`).
pub const MAX_SIDE: usize = MAX_BLOCK * MAX_BLOCK;

/// Edge length `b` of a block; the grid edge is `b²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxSize(u8);

impl BoxSize {
    /// 4×4 grids.
    pub const SHIDOKU: BoxSize = BoxSize(2);
    /// 9×9 grids.
    pub const SUDOKU: BoxSize = BoxSize(3);

    pub fn new(b: usize) -> Result<Self> {
        if (2..=MAX_BLOCK).contains(&b) {
            Ok(BoxSize(b as u8))
        } else {
            Err(Error::UnsupportedBoxSize(b))
        }
    }

    /// Block edge `b`, also the number of bands and the rows per band.
    #[inline]
    pub fn block(self) -> usize {
        self.0 as usize
    }

    /// Grid edge `N = b²`.
    #[inline]
    pub fn side(self) -> usize {
        self.block() * self.block()
    }

    #[inline]
    pub fn cells(self) -> usize {
        self.side() * self.side()
    }

    /// `(b!)^(b+1)`.
    pub fn band_perm_count(self) -> u64 {
        factorial(self.block()).pow(self.block() as u32 + 1)
    }

    /// Order of the geometric symmetry group, `2·(b!)^(2b+2)`.
    pub fn group_order(self) -> u64 {
        2 * self.band_perm_count() * self.band_perm_count()
    }

    /// Order of the digit relabeling group, `N!`.
    pub fn relabel_group_order(self) -> u64 {
        factorial(self.side())
    }

    /// Order of geometry combined with relabeling.
    pub fn full_group_order(self) -> u64 {
        self.group_order() * self.relabel_group_order()
    }

    pub(crate) fn ensure_same(self, other: BoxSize) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::BoxMismatch {
                left: self.block(),
                right: other.block(),
            })
        }
    }
}

impl Default for BoxSize {
    fn default() -> Self {
        BoxSize::SUDOKU
    }
}

impl fmt::Display for BoxSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// A permutation of `1..=N` that maps every band onto a band.
///
/// `image(i)` is where index `i` goes; the public surface is 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BandPermutation {
    size: BoxSize,
    // 0-based images; entries past `size.side()` stay zero.
    images: [u8; MAX_SIDE],
}

impl BandPermutation {
    pub fn identity(size: BoxSize) -> Self {
        let mut images = [0u8; MAX_SIDE];
        for (i, slot) in images.iter_mut().enumerate().take(size.side()) {
            *slot = i as u8;
        }
        BandPermutation { size, images }
    }

    /// Validates a 1-based image array.
    pub fn from_images(images: &[usize], size: BoxSize) -> Result<Self> {
        let n = size.side();
        let b = size.block();
        if images.len() != n {
            return Err(Error::WrongLength {
                expected: n,
                actual: images.len(),
            });
        }
        let mut seen = [false; MAX_SIDE];
        let mut raw = [0u8; MAX_SIDE];
        for (slot, &v) in raw.iter_mut().zip(images) {
            if v == 0 || v > n {
                return Err(Error::OutOfRange(v));
            }
            if seen[v - 1] {
                return Err(Error::NotABijection(v));
            }
            seen[v - 1] = true;
            *slot = (v - 1) as u8;
        }
        for band in 0..b {
            let chunk = &raw[band * b..(band + 1) * b];
            let target = chunk[0] as usize / b;
            if chunk.iter().any(|&v| v as usize / b != target) {
                return Err(Error::NotBandStructured {
                    band: band + 1,
                    images: chunk.iter().map(|&v| v as usize + 1).collect(),
                });
            }
        }
        Ok(BandPermutation { size, images: raw })
    }

    /// Parses the digit body of a literal such as `987654321`.
    pub fn from_digits(digits: &str, size: BoxSize) -> Result<Self> {
        let images = digits
            .chars()
            .enumerate()
            .map(|(position, ch)| {
                ch.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or(Error::BadCharacter { ch, position })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(&images, size)
    }

    /// The reversal `i ↦ N + 1 − i`; for `b = 3` this is the reflection
    /// `r₁ = (1 … 9 / 9 … 1)`.
    pub fn reversal(size: BoxSize) -> Self {
        let n = size.side();
        let mut images = [0u8; MAX_SIDE];
        for (i, slot) in images.iter_mut().enumerate().take(n) {
            *slot = (n - 1 - i) as u8;
        }
        BandPermutation { size, images }
    }

    /// Swaps two indices inside one band (1-based).
    pub fn swap_rows(size: BoxSize, a: usize, b: usize) -> Result<Self> {
        let mut images: Vec<usize> = (1..=size.side()).collect();
        if a == 0 || b == 0 || a > images.len() || b > images.len() {
            return Err(Error::OutOfRange(a.max(b)));
        }
        images.swap(a - 1, b - 1);
        Self::from_images(&images, size)
    }

    /// Swaps two whole bands (1-based band numbers), preserving row order.
    pub fn swap_bands(size: BoxSize, a: usize, b: usize) -> Result<Self> {
        let k = size.block();
        if a == 0 || b == 0 || a > k || b > k {
            return Err(Error::OutOfRange(a.max(b)));
        }
        let mut bands: Vec<usize> = (0..k).collect();
        bands.swap(a - 1, b - 1);
        let images: Vec<usize> = (0..size.side())
            .map(|i| bands[i / k] * k + i % k + 1)
            .collect();
        Self::from_images(&images, size)
    }

    #[inline]
    pub fn size(&self) -> BoxSize {
        self.size
    }

    /// Image of the 1-based index `i`.
    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    /// 1-based image array.
    pub fn images(&self) -> Vec<usize> {
        self.raw().iter().map(|&v| v as usize + 1).collect()
    }

    #[inline]
    pub(crate) fn raw(&self) -> &[u8] {
        &self.images[..self.size.side()]
    }

    /// Target band (1-based) of every source band.
    pub fn band_images(&self) -> Vec<usize> {
        let b = self.size.block();
        (0..b)
            .map(|k| self.images[k * b] as usize / b + 1)
            .collect()
    }

    /// Position inside the target band (1-based) of each row of source band
    /// `band` (1-based).
    pub fn inner_images(&self, band: usize) -> Vec<usize> {
        let b = self.size.block();
        self.images[(band - 1) * b..band * b]
            .iter()
            .map(|&v| v as usize % b + 1)
            .collect()
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.raw().iter().enumerate().all(|(i, &v)| v as usize == i)
    }

    /// `self ∘ other`, i.e. `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.size.ensure_same(other.size)?;
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        let mut images = [0u8; MAX_SIDE];
        for (slot, &v) in images.iter_mut().zip(other.raw()) {
            *slot = self.images[v as usize];
        }
        BandPermutation {
            size: self.size,
            images,
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = [0u8; MAX_SIDE];
        for (i, &v) in self.raw().iter().enumerate() {
            images[v as usize] = i as u8;
        }
        BandPermutation {
            size: self.size,
            images,
        }
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut acc = Self::identity(self.size);
        for _ in 0..exponent {
            acc = self.compose_unchecked(&acc);
        }
        acc
    }

    /// Smallest `k ≥ 1` with `selfᵏ = E`, found by repeated composition.
    pub fn order(&self) -> u32 {
        let mut acc = *self;
        let mut k = 1;
        while !acc.is_identity() {
            acc = self.compose_unchecked(&acc);
            k += 1;
        }
        k
    }

    /// Position in the enumeration order; the identity has rank 0.
    ///
    /// The rank is mixed-radix over `(band permutation, inner permutation of
    /// band 1, …, inner permutation of band b)`, each digit a Lehmer rank.
    pub fn rank(&self) -> usize {
        let b = self.size.block();
        let f = factorial(b) as usize;
        let mut outer = [0u8; MAX_BLOCK];
        for (k, slot) in outer.iter_mut().enumerate().take(b) {
            *slot = self.images[k * b] / b as u8;
        }
        let mut rank = lehmer_rank(&outer[..b]);
        for k in 0..b {
            let mut inner = [0u8; MAX_BLOCK];
            for (m, slot) in inner.iter_mut().enumerate().take(b) {
                *slot = self.images[k * b + m] % b as u8;
            }
            rank = rank * f + lehmer_rank(&inner[..b]);
        }
        rank
    }

    /// Inverse of [`rank`](Self::rank).
    pub fn from_rank(rank: usize, size: BoxSize) -> Option<Self> {
        if rank as u64 >= size.band_perm_count() {
            return None;
        }
        let b = size.block();
        let f = factorial(b) as usize;
        let mut rest = rank;
        let mut inner_ranks = [0usize; MAX_BLOCK];
        for k in (0..b).rev() {
            inner_ranks[k] = rest % f;
            rest /= f;
        }
        let outer = lehmer_unrank(rest, b);
        let mut images = [0u8; MAX_SIDE];
        for k in 0..b {
            let inner = lehmer_unrank(inner_ranks[k], b);
            for m in 0..b {
                images[k * b + m] = outer[k] * b as u8 + inner[m];
            }
        }
        Some(BandPermutation { size, images })
    }

    /// Every band-structured permutation exactly once, identity first.
    pub fn enumerate(size: BoxSize) -> impl Iterator<Item = BandPermutation> {
        (0..size.band_perm_count() as usize)
            .map(move |rank| BandPermutation::from_rank(rank, size).expect("rank in range"))
    }
}

fn lehmer_rank(perm: &[u8]) -> usize {
    let n = perm.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = perm[i + 1..].iter().filter(|&&v| v < perm[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

fn lehmer_unrank(mut rank: usize, n: usize) -> [u8; MAX_BLOCK] {
    let mut digits = [0usize; MAX_BLOCK];
    for i in (0..n).rev() {
        let radix = n - i;
        digits[i] = rank % radix;
        rank /= radix;
    }
    let mut pool: Vec<u8> = (0..n as u8).collect();
    let mut out = [0u8; MAX_BLOCK];
    for i in 0..n {
        out[i] = pool.remove(digits[i]);
    }
    out
}

impl Mul for BandPermutation {
    type Output = BandPermutation;

    /// `p * q = p ∘ q`. Panics on mismatched box sizes; use
    /// [`BandPermutation::compose`] for a fallible version.
    fn mul(self, rhs: Self) -> Self {
        self.compose(&rhs).expect("box size mismatch")
    }
}

impl fmt::Display for BandPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("r[")?;
        for &v in self.raw() {
            write!(f, "{}", v + 1)?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for BandPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
