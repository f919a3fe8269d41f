//! The three bound formulas for the eigenspace ansatz, and their tabulation.

use std::fmt::Write as _;

use num_integer::Integer;
use serde::Serialize;

/// d_j = (p − j − 1)·n − 3. Negative values force the eigenspace to vanish.
pub fn degree_bound(p: u32, n: u64, j: u32) -> i64 {
    i64::from(p - j - 1) * n as i64 - 3
}

/// ⌈((p − j − 1)·k − p + 1)/p⌉ before clamping at zero.
pub fn divisibility_formula(p: u32, k: u64, j: u32) -> i64 {
    let p = i64::from(p);
    Integer::div_ceil(&((p - i64::from(j) - 1) * k as i64 - p + 1), &p)
}

/// r_{j,i}: least r ≥ 0 with p·r ≥ (p − j − 1)·k_i − p + 1.
pub fn divisibility_order(p: u32, k: u64, j: u32) -> u32 {
    divisibility_formula(p, k, j).max(0) as u32
}

/// ⌈((p − j − 1)·r − 2p + 1)/p⌉ before clamping at zero.
pub fn point_order_formula(p: u32, r: u64, j: u32) -> i64 {
    let p = i64::from(p);
    Integer::div_ceil(&((p - i64::from(j) - 1) * r as i64 - 2 * p + 1), &p)
}

/// s_{j,P}: least s ≥ 0 with p·s ≥ (p − j − 1)·r_P − 2p + 1.
pub fn point_order(p: u32, r: u64, j: u32) -> u32 {
    point_order_formula(p, r, j).max(0) as u32
}

/// Values printed in the reference tables for p = 5, indexed `[j][column]`.
pub const PRINTED_DEGREE_BOUNDS: [[i64; 4]; 5] = [
    [1, 5, 8, 13],
    [0, 3, 6, 9],
    [0, 1, 3, 5],
    [0, 0, 0, 1],
    [0, 0, 0, 0],
];
pub const PRINTED_DIVISIBILITY: [[i64; 4]; 5] = [
    [0, 1, 2, 3],
    [0, 1, 1, 2],
    [0, 0, 1, 1],
    [0, 0, 0, 0],
    [0, 0, 0, 0],
];
pub const PRINTED_POINT_ORDERS: [[i64; 11]; 5] = [
    [0, 1, 2, 3, 3, 4, 5, 6, 7, 7, 8],
    [0, 0, 1, 2, 2, 3, 3, 4, 5, 5, 6],
    [0, 0, 0, 1, 1, 1, 2, 2, 3, 3, 3],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Degree,
    Divisibility,
    PointOrder,
}

impl BoundKind {
    pub fn title(self) -> &'static str {
        match self {
            BoundKind::Degree => "degree bound d_j",
            BoundKind::Divisibility => "divisibility order r_j",
            BoundKind::PointOrder => "point order s_j",
        }
    }

    pub fn column_symbol(self) -> &'static str {
        match self {
            BoundKind::Degree => "n",
            BoundKind::Divisibility => "k",
            BoundKind::PointOrder => "r",
        }
    }

    fn formula(self, p: u32, x: u64, j: u32) -> i64 {
        match self {
            BoundKind::Degree => degree_bound(p, x, j),
            BoundKind::Divisibility => divisibility_formula(p, x, j),
            BoundKind::PointOrder => point_order_formula(p, x, j),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCell {
    pub formula: i64,
    /// `max(formula, 0)`, the form in which the tables are printed.
    pub value: i64,
    pub clamped: bool,
    pub printed: Option<i64>,
}

impl BoundCell {
    pub fn matches_printed(&self) -> bool {
        self.printed.map_or(true, |v| v == self.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundTable {
    pub kind: BoundKind,
    pub p: u32,
    pub columns: Vec<u64>,
    /// `rows[j][c]` for `j = 0..p`.
    pub rows: Vec<Vec<BoundCell>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableMismatch {
    pub kind: BoundKind,
    pub j: u32,
    pub column: u64,
    pub printed: i64,
    pub computed: i64,
}

impl BoundTable {
    pub fn compute(kind: BoundKind, p: u32, columns: Vec<u64>, printed: Option<Vec<Vec<i64>>>) -> Self {
        let rows = (0..p)
            .map(|j| {
                columns
                    .iter()
                    .enumerate()
                    .map(|(c, &x)| {
                        let formula = kind.formula(p, x, j);
                        BoundCell {
                            formula,
                            value: formula.max(0),
                            clamped: formula < 0,
                            printed: printed.as_ref().map(|t| t[j as usize][c]),
                        }
                    })
                    .collect()
            })
            .collect();
        BoundTable {
            kind,
            p,
            columns,
            rows,
        }
    }

    pub fn cell(&self, j: u32, column: u64) -> Option<&BoundCell> {
        let c = self.columns.iter().position(|&x| x == column)?;
        self.rows.get(j as usize)?.get(c)
    }

    pub fn mismatches(&self) -> Vec<TableMismatch> {
        self.cells()
            .filter(|(_, _, cell)| !cell.matches_printed())
            .map(|(j, column, cell)| TableMismatch {
                kind: self.kind,
                j,
                column,
                printed: cell.printed.expect("only printed cells can mismatch"),
                computed: cell.value,
            })
            .collect()
    }

    /// `(j, column)` of every cell whose formula value is negative.
    pub fn clamped_cells(&self) -> Vec<(u32, u64)> {
        self.cells()
            .filter(|(_, _, cell)| cell.clamped)
            .map(|(j, c, _)| (j, c))
            .collect()
    }

    fn cells(&self) -> impl Iterator<Item = (u32, u64, &BoundCell)> {
        self.rows.iter().enumerate().flat_map(move |(j, row)| {
            row.iter()
                .zip(&self.columns)
                .map(move |(cell, &c)| (j as u32, c, cell))
        })
    }

    /// Plain-text grid. `*` marks a clamped cell, `!` a cell differing from print.
    pub fn render(&self) -> String {
        let mut out = format!("{} (p = {})\n", self.kind.title(), self.p);
        let sym = self.kind.column_symbol();
        let _ = write!(out, "{:>6}", "");
        for c in &self.columns {
            let _ = write!(out, "{:>7}", format!("{sym}={c}"));
        }
        out.push('\n');
        for (j, row) in self.rows.iter().enumerate() {
            let _ = write!(out, "{:>6}", format!("j={j}"));
            for cell in row {
                let mut text = cell.formula.to_string();
                if cell.clamped {
                    text.push('*');
                }
                if !cell.matches_printed() {
                    let _ = write!(text, "!{}", cell.printed.unwrap_or_default());
                }
                let _ = write!(out, "{text:>7}");
            }
            out.push('\n');
        }
        out
    }
}

fn printed<const N: usize>(t: &[[i64; N]; 5]) -> Vec<Vec<i64>> {
    t.iter().map(|r| r.to_vec()).collect()
}

/// The three tables with the reference columns (n = 1..4, k = 1..4, r = 2..12).
/// Printed values are attached when `p = 5`.
pub fn bound_tables(p: u32) -> [BoundTable; 3] {
    let attach = p == 5;
    [
        BoundTable::compute(
            BoundKind::Degree,
            p,
            (1..=4).collect(),
            attach.then(|| printed(&PRINTED_DEGREE_BOUNDS)),
        ),
        BoundTable::compute(
            BoundKind::Divisibility,
            p,
            (1..=4).collect(),
            attach.then(|| printed(&PRINTED_DIVISIBILITY)),
        ),
        BoundTable::compute(
            BoundKind::PointOrder,
            p,
            (2..=12).collect(),
            attach.then(|| printed(&PRINTED_POINT_ORDERS)),
        ),
    ]
}
