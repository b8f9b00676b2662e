use crate::error::{Error, Result};

/// An order-`n` Latin square with symbols `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatinSquare {
    order: usize,
    cells: Vec<u32>,
}

/// A square read from text, plus whether its symbols were written 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedSquare {
    pub square: LatinSquare,
    pub one_based: bool,
}

impl LatinSquare {
    pub fn new(order: usize, cells: Vec<u32>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidLatinSquare("order must be positive".into()));
        }
        if cells.len() != order * order {
            return Err(Error::InvalidLatinSquare(format!(
                "expected {} cells, found {}",
                order * order,
                cells.len()
            )));
        }
        let sq = LatinSquare { order, cells };
        sq.check()?;
        Ok(sq)
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let order = rows.len();
        if let Some((r, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != order) {
            return Err(Error::InvalidLatinSquare(format!(
                "row {r} has {} entries, expected {order}",
                row.len()
            )));
        }
        Self::new(order, rows.concat())
    }

    /// `cell(r, c) = (r + c) mod n`.
    pub fn cyclic(order: usize) -> Self {
        assert!(order > 0);
        let cells = (0..order)
            .flat_map(|r| (0..order).map(move |c| ((r + c) % order) as u32))
            .collect();
        LatinSquare { order, cells }
    }

    fn check(&self) -> Result<()> {
        let n = self.order;
        for (i, &s) in self.cells.iter().enumerate() {
            if s as usize >= n {
                return Err(Error::InvalidLatinSquare(format!(
                    "symbol {s} at row {}, column {} is not below {n}",
                    i / n,
                    i % n
                )));
            }
        }
        for r in 0..n {
            let mut seen = vec![false; n];
            for c in 0..n {
                let s = self.symbol(r, c) as usize;
                if std::mem::replace(&mut seen[s], true) {
                    return Err(Error::InvalidLatinSquare(format!(
                        "symbol {s} repeats in row {r}"
                    )));
                }
            }
        }
        for c in 0..n {
            let mut seen = vec![false; n];
            for r in 0..n {
                let s = self.symbol(r, c) as usize;
                if std::mem::replace(&mut seen[s], true) {
                    return Err(Error::InvalidLatinSquare(format!(
                        "symbol {s} repeats in column {c}"
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn symbol(&self, row: usize, col: usize) -> u32 {
        self.cells[row * self.order + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.cells.chunks(self.order)
    }

    /// Parses whitespace-separated symbols, one row per non-blank line.
    /// Symbols may be `0..n` or `1..n`; the latter are shifted down.
    pub fn parse(text: &str) -> Result<ParsedSquare> {
        let mut rows: Vec<Vec<u64>> = Vec::new();
        let mut lines: Vec<usize> = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut row = Vec::new();
            for (tok_i, tok) in line.split_whitespace().enumerate() {
                let value = tok.parse::<u64>().map_err(|_| Error::Parse {
                    position: format!("line {}, token {}", ln + 1, tok_i + 1),
                    message: format!("`{tok}` is not a non-negative integer"),
                })?;
                row.push(value);
            }
            rows.push(row);
            lines.push(ln + 1);
        }
        let n = rows.len();
        if n == 0 {
            return Err(Error::Parse {
                position: "line 1".into(),
                message: "empty square".into(),
            });
        }
        for (row, &ln) in rows.iter().zip(&lines) {
            if row.len() != n {
                return Err(Error::Parse {
                    position: format!("line {ln}"),
                    message: format!("expected {n} symbols, found {}", row.len()),
                });
            }
        }
        let min = rows.iter().flatten().copied().min().unwrap_or(0);
        let max = rows.iter().flatten().copied().max().unwrap_or(0);
        let one_based = min == 1 && max == n as u64;
        let shift = u64::from(one_based);
        for (row, &ln) in rows.iter().zip(&lines) {
            if let Some((tok_i, &s)) = row.iter().enumerate().find(|(_, &s)| s < shift || s - shift >= n as u64) {
                return Err(Error::Parse {
                    position: format!("line {ln}, token {}", tok_i + 1),
                    message: format!("symbol {s} out of range for order {n}"),
                });
            }
        }
        let cells = rows.iter().flatten().map(|&s| (s - shift) as u32).collect();
        let square = LatinSquare::new(n, cells)?;
        Ok(ParsedSquare { square, one_based })
    }

    /// Rows of space-separated 0-based symbols.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}
