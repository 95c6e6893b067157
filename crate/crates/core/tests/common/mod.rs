#![allow(dead_code)]

use sudoku_symmetry::grid::shifted_grid;
use sudoku_symmetry::{BoxSize, Grid};

/// Five fixed complete 9×9 grids: the shifted fixture and four others found
/// by randomized backtracking.
pub fn fixed_grids() -> Vec<Grid> {
    let mut out = vec![shifted_grid(BoxSize::SUDOKU)];
    for text in [
        "831725469479186325265439871387641952512397648694258713946513287753862194128974536",
        "683295417421867359795341862572134986846579123319682574138426795964758231257913648",
        "496871523153294786782356914347528169821649357965137248278413695534962871619785432",
        "215438679369271845478695321824967153531824967796513482987342516143756298652189734",
    ] {
        out.push(Grid::parse(text).unwrap());
    }
    out
}
