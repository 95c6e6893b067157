//! Grids, digit relabelings, and the text formats.
//!
//! Cells are addressed `a_{i,j}` with 1-based row `i` and column `j`; value
//! `0` is an empty cell.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{BoxSize, MAX_SIDE};
use crate::symmetry::GridSymmetry;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grid {
    size: BoxSize,
    cells: Vec<u8>,
}

impl Grid {
    pub fn new(size: BoxSize, cells: Vec<u8>) -> Result<Self> {
        if cells.len() != size.cells() {
            return Err(Error::BadLength {
                expected: size.cells(),
                actual: cells.len(),
            });
        }
        if let Some(&v) = cells.iter().find(|&&v| v as usize > size.side()) {
            return Err(Error::OutOfRange(v as usize));
        }
        Ok(Grid { size, cells })
    }

    pub fn empty(size: BoxSize) -> Self {
        Grid {
            size,
            cells: vec![0; size.cells()],
        }
    }

    pub fn from_rows(size: BoxSize, rows: &[Vec<u8>]) -> Result<Self> {
        let n = size.side();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::BadLength {
                expected: size.cells(),
                actual: rows.iter().map(Vec::len).sum(),
            });
        }
        Self::new(size, rows.concat())
    }

    #[inline]
    pub fn size(&self) -> BoxSize {
        self.size
    }

    /// Row-major cell values.
    #[inline]
    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    /// Value of `a_{i,j}` (1-based).
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.cells[(i - 1) * self.size.side() + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: u8) -> Result<()> {
        if value as usize > self.size.side() {
            return Err(Error::OutOfRange(value as usize));
        }
        let n = self.size.side();
        self.cells[(i - 1) * n + (j - 1)] = value;
        Ok(())
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.cells.chunks(self.size.side())
    }

    /// No placed digit repeats in any row, column or block.
    pub fn is_valid(&self) -> bool {
        let n = self.size.side();
        let b = self.size.block();
        let mut row_seen = [0u32; MAX_SIDE];
        let mut col_seen = [0u32; MAX_SIDE];
        let mut block_seen = [0u32; MAX_SIDE];
        for (idx, &v) in self.cells.iter().enumerate() {
            if v == 0 {
                continue;
            }
            let (i, j) = (idx / n, idx % n);
            let k = (i / b) * b + j / b;
            let bit = 1u32 << v;
            if row_seen[i] & bit != 0 || col_seen[j] & bit != 0 || block_seen[k] & bit != 0 {
                return false;
            }
            row_seen[i] |= bit;
            col_seen[j] |= bit;
            block_seen[k] |= bit;
        }
        true
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(|&v| v != 0) && self.is_valid()
    }

    /// Moves the content of every cell `(i, j)` to `g.map_cell(i, j)`.
    pub fn apply_symmetry(&self, g: &GridSymmetry) -> Result<Grid> {
        self.size.ensure_same(g.size())?;
        let n = self.size.side();
        let mut cells = vec![0u8; self.cells.len()];
        for i in 1..=n {
            for j in 1..=n {
                let (ti, tj) = g.map_cell(i, j);
                cells[(ti - 1) * n + (tj - 1)] = self.cells[(i - 1) * n + (j - 1)];
            }
        }
        Ok(Grid {
            size: self.size,
            cells,
        })
    }

    /// Replaces every digit `v` with `o(v)`; empty cells stay empty.
    pub fn apply_relabel(&self, o: &DigitPermutation) -> Result<Grid> {
        self.size.ensure_same(o.size)?;
        Ok(Grid {
            size: self.size,
            cells: self.cells.iter().map(|&v| o.images[v as usize]).collect(),
        })
    }

    /// Parses a single grid in line, block or JSON form. The box size is
    /// inferred from the number of cells (16 or 81) or from the JSON `box`.
    pub fn parse(text: &str) -> Result<Self> {
        parse_one(text, None)
    }

    pub fn parse_with_box(text: &str, size: BoxSize) -> Result<Self> {
        parse_one(text, Some(size))
    }

    pub fn to_text(&self, format: GridFormat) -> String {
        let n = self.size.side();
        match format {
            GridFormat::Line => {
                let mut out: String = self.cells.iter().map(|&v| cell_char(v)).collect();
                out.push('\n');
                out
            }
            GridFormat::Block => {
                let mut out = String::with_capacity(self.cells.len() + n);
                for row in self.rows() {
                    out.extend(row.iter().map(|&v| cell_char(v)));
                    out.push('\n');
                }
                out
            }
            GridFormat::Json => {
                let json = GridJson {
                    box_size: self.size.block(),
                    cells: self.rows().map(<[u8]>::to_vec).collect(),
                };
                let mut out = serde_json::to_string(&json).expect("grid serializes");
                out.push('\n');
                out
            }
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(GridJson {
            box_size: self.size.block(),
            cells: self.rows().map(<[u8]>::to_vec).collect(),
        })
        .expect("grid serializes")
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &v in &self.cells {
            write!(f, "{}", cell_char(v))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Grid({self})")
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Grid::parse(s)
    }
}

#[derive(Serialize, Deserialize)]
struct GridJson {
    #[serde(rename = "box")]
    box_size: usize,
    cells: Vec<Vec<u8>>,
}

fn cell_char(v: u8) -> char {
    if v == 0 {
        '.'
    } else {
        char::from(b'0' + v)
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn infer_box(cells: usize) -> Result<BoxSize> {
    match cells {
        16 => Ok(BoxSize::SHIDOKU),
        81 => Ok(BoxSize::SUDOKU),
        _ => Err(Error::BadLength {
            expected: BoxSize::SUDOKU.cells(),
            actual: cells,
        }),
    }
}

fn parse_one(text: &str, size: Option<BoxSize>) -> Result<Grid> {
    if text.trim_start().starts_with('{') {
        return parse_json(text, size);
    }
    let body: String = content_lines(text).collect();
    parse_cells(&body, size)
}

fn parse_cells(body: &str, size: Option<BoxSize>) -> Result<Grid> {
    let count = body.chars().count();
    let size = match size {
        Some(size) if count != size.cells() => {
            return Err(Error::BadLength {
                expected: size.cells(),
                actual: count,
            })
        }
        Some(size) => size,
        None => infer_box(count)?,
    };
    let n = size.side();
    let cells = body
        .chars()
        .enumerate()
        .map(|(position, ch)| match ch {
            '.' | '0' => Ok(0),
            '1'..='9' if (ch as usize - '0' as usize) <= n => Ok(ch as u8 - b'0'),
            _ => Err(Error::BadCharacter { ch, position }),
        })
        .collect::<Result<Vec<u8>>>()?;
    Ok(Grid { size, cells })
}

fn parse_json(text: &str, size: Option<BoxSize>) -> Result<Grid> {
    let json: GridJson = serde_json::from_str(text).map_err(|e| Error::BadJson(e.to_string()))?;
    let parsed = BoxSize::new(json.box_size)?;
    if let Some(size) = size {
        size.ensure_same(parsed)?;
    }
    Grid::from_rows(parsed, &json.cells)
}

/// Parses a collection of grids: a JSON object or array, one grid per line,
/// or a single block-format grid.
pub fn parse_corpus(text: &str, size: Option<BoxSize>) -> Result<Vec<Grid>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        let all: Vec<GridJson> =
            serde_json::from_str(text).map_err(|e| Error::BadJson(e.to_string()))?;
        return all
            .into_iter()
            .map(|json| {
                let parsed = BoxSize::new(json.box_size)?;
                if let Some(size) = size {
                    size.ensure_same(parsed)?;
                }
                Grid::from_rows(parsed, &json.cells)
            })
            .collect();
    }
    if trimmed.starts_with('{') {
        return Ok(vec![parse_json(text, size)?]);
    }
    let lines: Vec<&str> = content_lines(text).collect();
    let full = |len: usize| match size {
        Some(size) => len == size.cells(),
        None => len == 16 || len == 81,
    };
    if !lines.is_empty() && lines.iter().all(|l| full(l.chars().count())) {
        lines.iter().map(|l| parse_cells(l, size)).collect()
    } else {
        Ok(vec![parse_cells(&lines.concat(), size)?])
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GridFormat {
    /// `N²` characters on one line.
    #[default]
    Line,
    /// `N` lines of `N` characters.
    Block,
    /// `{"box": b, "cells": [[...]]}`.
    Json,
}

impl FromStr for GridFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "line" => Ok(GridFormat::Line),
            "block" => Ok(GridFormat::Block),
            "json" => Ok(GridFormat::Json),
            other => Err(format!(
                "unknown format {other:?} (expected line, block or json)"
            )),
        }
    }
}

/// A bijection on the digits `1..=N`; `0` always maps to `0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitPermutation {
    size: BoxSize,
    images: [u8; MAX_SIDE + 1],
}

impl DigitPermutation {
    pub fn identity(size: BoxSize) -> Self {
        let mut images = [0u8; MAX_SIDE + 1];
        for (v, slot) in images.iter_mut().enumerate().take(size.side() + 1) {
            *slot = v as u8;
        }
        DigitPermutation { size, images }
    }

    /// `images[k]` is the new label of digit `k + 1`.
    pub fn from_images(images: &[usize], size: BoxSize) -> Result<Self> {
        let n = size.side();
        if images.len() != n {
            return Err(Error::WrongLength {
                expected: n,
                actual: images.len(),
            });
        }
        let mut out = [0u8; MAX_SIDE + 1];
        let mut seen = [false; MAX_SIDE + 1];
        for (k, &v) in images.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::OutOfRange(v));
            }
            if seen[v] {
                return Err(Error::NotABijection(v));
            }
            seen[v] = true;
            out[k + 1] = v as u8;
        }
        Ok(DigitPermutation { size, images: out })
    }

    /// Transposition of two digits.
    pub fn swap(size: BoxSize, a: u8, b: u8) -> Result<Self> {
        let mut p = Self::identity(size);
        for v in [a, b] {
            if v == 0 || v as usize > size.side() {
                return Err(Error::OutOfRange(v as usize));
            }
        }
        p.images.swap(a as usize, b as usize);
        Ok(p)
    }

    pub fn random<R: Rng + ?Sized>(size: BoxSize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (1..=size.side()).collect();
        images.shuffle(rng);
        Self::from_images(&images, size).expect("shuffle is a bijection")
    }

    #[inline]
    pub fn size(&self) -> BoxSize {
        self.size
    }

    #[inline]
    pub fn image(&self, digit: u8) -> u8 {
        self.images[digit as usize]
    }

    /// New labels of digits `1..=N`.
    pub fn images(&self) -> Vec<usize> {
        self.images[1..=self.size.side()]
            .iter()
            .map(|&v| v as usize)
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.size.ensure_same(other.size)?;
        let mut images = [0u8; MAX_SIDE + 1];
        for (image, &mid) in images
            .iter_mut()
            .zip(&other.images)
            .take(self.size.side() + 1)
        {
            *image = self.images[mid as usize];
        }
        Ok(DigitPermutation {
            size: self.size,
            images,
        })
    }

    pub fn inverse(&self) -> Self {
        let mut images = [0u8; MAX_SIDE + 1];
        for v in 0..=self.size.side() {
            images[self.images[v] as usize] = v as u8;
        }
        DigitPermutation {
            size: self.size,
            images,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .take(self.size.side() + 1)
            .enumerate()
            .all(|(v, &w)| v == w as usize)
    }

    pub(crate) fn from_raw(size: BoxSize, images: [u8; MAX_SIDE + 1]) -> Self {
        DigitPermutation { size, images }
    }
}

impl fmt::Display for DigitPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("o[")?;
        for v in self.images() {
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for DigitPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The 9×9 grid whose row `i` is `1..9` cyclically shifted by the `i`-th
/// entry of `(0, 3, 6, 1, 4, 7, 2, 5, 8)`; for `b = 2` the offsets are
/// `(0, 2, 1, 3)`.
pub fn shifted_grid(size: BoxSize) -> Grid {
    let b = size.block();
    let n = size.side();
    let mut cells = Vec::with_capacity(n * n);
    for i in 0..n {
        let offset = (i % b) * b + i / b;
        cells.extend((0..n).map(|j| ((j + offset) % n + 1) as u8));
    }
    Grid { size, cells }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::NamedSymmetry;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn all_ones_parses_but_is_invalid() {
        let g = Grid::parse(&"1".repeat(81)).unwrap();
        assert!(!g.is_valid());
        assert!(!g.is_complete());
    }

    #[test]
    fn bad_length_and_character() {
        assert!(matches!(Grid::parse("12"), Err(Error::BadLength { .. })));
        let mut text = "1".repeat(80);
        text.push('x');
        assert_eq!(
            Grid::parse(&text),
            Err(Error::BadCharacter {
                ch: 'x',
                position: 80
            })
        );
        assert!(matches!(
            Grid::parse(&"5".repeat(16)),
            Err(Error::BadCharacter { ch: '5', .. })
        ));
    }

    #[test]
    fn shifted_fixture_is_complete() {
        let g = shifted_grid(BoxSize::SUDOKU);
        assert_eq!(
            g.to_string(),
            "123456789456789123789123456234567891567891234891234567345678912678912345912345678"
        );
        assert!(g.is_complete());
        assert!(shifted_grid(BoxSize::SHIDOKU).is_complete());
    }

    #[test]
    fn formats() {
        let mut g = shifted_grid(BoxSize::SUDOKU);
        g.set(1, 1, 0).unwrap();
        let line = g.to_text(GridFormat::Line);
        assert!(line.starts_with(".23"));
        assert_eq!(line.len(), 82);
        let block = g.to_text(GridFormat::Block);
        assert_eq!(block.lines().count(), 9);
        assert!(block.lines().all(|l| l.len() == 9));
        for format in [GridFormat::Line, GridFormat::Block, GridFormat::Json] {
            assert_eq!(Grid::parse(&g.to_text(format)).unwrap(), g);
        }
    }

    #[test]
    fn comments_and_zero_empties() {
        let text = "# a comment\n0234\n3412\n2143\n4321\n";
        let g = Grid::parse(text).unwrap();
        assert_eq!(g.size(), BoxSize::SHIDOKU);
        assert_eq!(g.get(1, 1), 0);
        assert_eq!(g.get(4, 4), 1);
    }

    #[test]
    fn corpus_of_lines() {
        let a = shifted_grid(BoxSize::SUDOKU);
        let b = a
            .apply_symmetry(&GridSymmetry::transpose(BoxSize::SUDOKU))
            .unwrap();
        let text = format!("# corpus\n{a}\n{b}\n");
        assert_eq!(parse_corpus(&text, None).unwrap(), vec![a.clone(), b]);
        let block = a.to_text(GridFormat::Block);
        assert_eq!(parse_corpus(&block, None).unwrap(), vec![a]);
    }

    #[test]
    fn h_reflects_rows() {
        let g = shifted_grid(BoxSize::SUDOKU);
        let h = GridSymmetry::named(NamedSymmetry::H, BoxSize::SUDOKU).unwrap();
        let out = g.apply_symmetry(&h).unwrap();
        for i in 1..=9 {
            for j in 1..=9 {
                assert_eq!(out.get(10 - i, j), g.get(i, j));
            }
        }
        assert_eq!(out.apply_symmetry(&h).unwrap(), g);
    }

    #[test]
    fn transpose_moves_cell_12_to_21() {
        let g = shifted_grid(BoxSize::SUDOKU);
        let out = g
            .apply_symmetry(&GridSymmetry::transpose(BoxSize::SUDOKU))
            .unwrap();
        assert_eq!(out.get(2, 1), g.get(1, 2));
    }

    #[test]
    fn relabel_basics() {
        let g = shifted_grid(BoxSize::SUDOKU);
        let id = DigitPermutation::identity(BoxSize::SUDOKU);
        assert_eq!(g.apply_relabel(&id).unwrap(), g);
        let swap = DigitPermutation::swap(BoxSize::SUDOKU, 1, 2).unwrap();
        let once = g.apply_relabel(&swap).unwrap();
        assert_ne!(once, g);
        assert!(once.is_complete());
        assert_eq!(once.apply_relabel(&swap).unwrap(), g);
    }

    #[test]
    fn relabel_keeps_empty_cells() {
        let mut g = shifted_grid(BoxSize::SHIDOKU);
        g.set(2, 3, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let o = DigitPermutation::random(BoxSize::SHIDOKU, &mut rng);
        assert_eq!(g.apply_relabel(&o).unwrap().get(2, 3), 0);
        assert!(o.compose(&o.inverse()).unwrap().is_identity());
    }

    #[test]
    fn digit_permutation_validation() {
        let s = BoxSize::SHIDOKU;
        assert_eq!(
            DigitPermutation::from_images(&[1, 1, 2, 3], s),
            Err(Error::NotABijection(1))
        );
        assert_eq!(
            DigitPermutation::from_images(&[1, 2, 3, 5], s),
            Err(Error::OutOfRange(5))
        );
    }

    #[test]
    fn mismatched_sizes_rejected() {
        let g = shifted_grid(BoxSize::SHIDOKU);
        let d = GridSymmetry::transpose(BoxSize::SUDOKU);
        assert!(matches!(
            g.apply_symmetry(&d),
            Err(Error::BoxMismatch { .. })
        ));
    }
}
