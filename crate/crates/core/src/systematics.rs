//! Exact real-parameter counts for general, X- and extended-X states.
//!
//! All arithmetic is in `u128` with overflow checks.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Families counted for `n` copies of a `d`-level system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MultiFamily {
    General,
    X,
    ExtendedX,
    /// Number of su(2) blocks in the qubit X sub-algebra.
    Su2Blocks,
    /// Number of u(1) factors in the qubit X sub-algebra.
    U1Blocks,
}

/// Families counted for a `d × D` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BipartiteFamily {
    General,
    X,
    ExtendedX,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecialKind {
    /// `n` copies of dimension `d`: `2(d^n - 1)`.
    Pure,
    /// `d × D`: `d(D² + d - 1) - 1`.
    QuantumClassical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountQuery {
    Multi { family: MultiFamily, d: u32, n: u32 },
    Bipartite { family: BipartiteFamily, d: u32, big_d: u32 },
    Special { kind: SpecialKind, d: u32, second: u32 },
}

impl CountQuery {
    pub fn evaluate(&self) -> Result<u128> {
        match *self {
            CountQuery::Multi { family, d, n } => count_multi(family, d, n),
            CountQuery::Bipartite { family, d, big_d } => count_bipartite(family, d, big_d),
            CountQuery::Special { kind, d, second } => count_special(kind, d, second),
        }
    }
}

impl fmt::Display for MultiFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MultiFamily::General => "general",
            MultiFamily::X => "X-states",
            MultiFamily::ExtendedX => "extended X states",
            MultiFamily::Su2Blocks => "su(2)s",
            MultiFamily::U1Blocks => "u(1)s",
        })
    }
}

fn overflow(value: u32) -> Error {
    Error::DomainError { what: "count overflows u128", value: value as f64 }
}

fn pow(base: u32, exp: u32) -> Result<u128> {
    (base as u128).checked_pow(exp).ok_or_else(|| overflow(exp))
}

fn check_local(d: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::DomainError { what: "local dimension", value: d as f64 });
    }
    Ok(())
}

fn check_copies(n: u32) -> Result<()> {
    if n < 1 {
        return Err(Error::DomainError { what: "number of copies", value: n as f64 });
    }
    Ok(())
}

fn unsupported(family: &'static str, d: u32) -> Error {
    Error::UnsupportedFamilyDimension { family, dim: d as usize }
}

pub fn count_multi(family: MultiFamily, d: u32, n: u32) -> Result<u128> {
    check_local(d)?;
    check_copies(n)?;
    match family {
        MultiFamily::General => pow(d, 2 * n)?.checked_sub(1).ok_or_else(|| overflow(n)),
        MultiFamily::X => match d {
            2 => Ok(pow(2, n + 1)? - 1),
            3 => Ok(2 * (pow(3, n)? - 1)),
            4 => Ok(2 * pow(4, n)? - 1),
            _ => Err(unsupported("x", d)),
        },
        MultiFamily::ExtendedX => match (d, n) {
            // A single qudit has no blocks to extend.
            (2 | 3, 1) => count_multi(MultiFamily::X, d, 1),
            (2, _) => Ok(pow(2, n + 2)? - 1),
            (3, _) => Ok(2 * (pow(3, n + 1)? - 5)),
            _ => Err(unsupported("extended_x", d)),
        },
        MultiFamily::Su2Blocks => match d {
            2 => pow(2, n - 1),
            _ => Err(unsupported("su2_blocks", d)),
        },
        MultiFamily::U1Blocks => match d {
            2 => Ok(pow(2, n - 1)? - 1),
            _ => Err(unsupported("u1_blocks", d)),
        },
    }
}

/// Real parameters of one Hermitian X-shaped `D × D` block after nothing is fixed.
fn hermitian_x_block(big_d: u128) -> u128 {
    if big_d % 2 == 0 {
        2 * big_d
    } else {
        2 * big_d - 1
    }
}

pub fn count_bipartite(family: BipartiteFamily, d: u32, big_d: u32) -> Result<u128> {
    check_local(d)?;
    check_local(big_d)?;
    let (d, big_d) = (d as u128, big_d as u128);
    let total = d * big_d;
    Ok(match family {
        BipartiteFamily::General => total * total - 1,
        BipartiteFamily::X => {
            if total % 2 == 0 {
                2 * total - 1
            } else {
                2 * total - 2
            }
        }
        BipartiteFamily::ExtendedX => d * d * hermitian_x_block(big_d) - 1,
    })
}

/// `Pure` reads `second` as the number of copies, `QuantumClassical` as the partner dimension.
pub fn count_special(kind: SpecialKind, d: u32, second: u32) -> Result<u128> {
    check_local(d)?;
    match kind {
        SpecialKind::Pure => {
            check_copies(second)?;
            Ok(2 * (pow(d, second)? - 1))
        }
        SpecialKind::QuantumClassical => {
            check_local(second)?;
            let (d, big_d) = (d as u128, second as u128);
            Ok(d * (big_d * big_d + d - 1) - 1)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table2Row {
    pub family: MultiFamily,
    pub symbolic: &'static str,
    pub values: Vec<u128>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table2Panel {
    pub d: u32,
    pub label: &'static str,
    pub rows: Vec<Table2Row>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table2 {
    /// Copy counts covered by each row.
    pub copies: Vec<u32>,
    pub panels: Vec<Table2Panel>,
}

impl Table2 {
    /// All `(panel label, family, n, count)` cells.
    pub fn cells(&self) -> impl Iterator<Item = (&'static str, MultiFamily, u32, u128)> + '_ {
        self.panels.iter().flat_map(move |panel| {
            panel.rows.iter().flat_map(move |row| {
                self.copies.iter().zip(&row.values).map(move |(&n, &v)| (panel.label, row.family, n, v))
            })
        })
    }
}

const QUBIT_ROWS: [(MultiFamily, &str); 5] = [
    (MultiFamily::General, "2^(2n)-1"),
    (MultiFamily::X, "2^(n+1)-1"),
    (MultiFamily::Su2Blocks, "2^(n-1)"),
    (MultiFamily::U1Blocks, "2^(n-1)-1"),
    (MultiFamily::ExtendedX, "2^(n+2)-1"),
];

const QUTRIT_ROWS: [(MultiFamily, &str); 3] = [
    (MultiFamily::General, "3^(2n)-1"),
    (MultiFamily::X, "2(3^n-1)"),
    (MultiFamily::ExtendedX, "2(3^(n+1)-5)"),
];

/// Qubit and qutrit panels for `n = 1..=max_n`.
pub fn table2_up_to(max_n: u32) -> Result<Table2> {
    let copies: Vec<u32> = (1..=max_n).collect();
    let mut panels = Vec::new();
    for (d, label, rows) in [(2, "qubits", &QUBIT_ROWS[..]), (3, "qutrits", &QUTRIT_ROWS[..])] {
        let rows = rows
            .iter()
            .map(|&(family, symbolic)| {
                let values = copies.iter().map(|&n| count_multi(family, d, n)).collect::<Result<Vec<_>>>()?;
                Ok(Table2Row { family, symbolic, values })
            })
            .collect::<Result<Vec<_>>>()?;
        panels.push(Table2Panel { d, label, rows });
    }
    Ok(Table2 { copies, panels })
}

/// The published table, `n = 1..=4`.
pub fn table2() -> Table2 {
    table2_up_to(4).expect("small counts fit in u128")
}

impl fmt::Display for Table2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for panel in &self.panels {
            write!(f, "{:<20}", format!("number of {}", panel.label))?;
            for n in &self.copies {
                write!(f, " {n:>8}")?;
            }
            writeln!(f, " {:>14}", "n")?;
            for row in &panel.rows {
                write!(f, "{:<20}", alloc::string::ToString::to_string(&row.family))?;
                for v in &row.values {
                    write!(f, " {v:>8}")?;
                }
                writeln!(f, " {:>14}", row.symbolic)?;
            }
        }
        Ok(())
    }
}

/// Nested sub-algebra pattern of the `n`-copy X-state for qubits or qutrits.
pub fn x_subalgebra_structure(d: u32, n: u32) -> Result<String> {
    check_copies(n)?;
    if n > 6 {
        return Err(Error::DomainError { what: "structure depth", value: n as f64 });
    }
    match d {
        2 => Ok(qubit_structure(n)),
        3 => Ok(qutrit_structure(n)),
        _ => Err(unsupported("x_subalgebra", d)),
    }
}

fn qubit_structure(n: u32) -> String {
    match n {
        1 => String::from("su(2)"),
        2 => String::from("su(2) ⊗ u(1) ⊗ su(2)"),
        _ => {
            let inner = qubit_structure(n - 1);
            format!("[{inner}] ⊗ [u(1)] ⊗ [{inner}]")
        }
    }
}

fn qutrit_structure(n: u32) -> String {
    if n == 1 {
        return String::from("su^(X)(3)");
    }
    let inner = qutrit_structure(n - 1);
    format!("u(1) ⊗ [{inner}] ⊗ u(1) ⊗ [{inner}] ⊗ u(1) ⊗ [{inner}] ⊗ u(1)")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(count_multi(MultiFamily::X, 2, 3).unwrap(), 15);
        assert_eq!(count_multi(MultiFamily::General, 3, 2).unwrap(), 80);
        assert_eq!(count_multi(MultiFamily::ExtendedX, 3, 4).unwrap(), 476);
        assert_eq!(count_bipartite(BipartiteFamily::X, 2, 2).unwrap(), 7);
        assert_eq!(count_bipartite(BipartiteFamily::X, 3, 3).unwrap(), 16);
        assert_eq!(count_bipartite(BipartiteFamily::ExtendedX, 2, 4).unwrap(), 31);
        assert_eq!(count_special(SpecialKind::Pure, 2, 2).unwrap(), 6);
        assert_eq!(count_special(SpecialKind::QuantumClassical, 3, 3).unwrap(), 32);
        assert_eq!(count_special(SpecialKind::QuantumClassical, 2, 3).unwrap(), 19);
    }

    #[test]
    fn unsupported_dimensions() {
        assert!(matches!(count_multi(MultiFamily::X, 5, 2), Err(Error::UnsupportedFamilyDimension { .. })));
        assert!(matches!(count_multi(MultiFamily::ExtendedX, 4, 2), Err(Error::UnsupportedFamilyDimension { .. })));
        assert!(matches!(count_multi(MultiFamily::Su2Blocks, 3, 2), Err(Error::UnsupportedFamilyDimension { .. })));
        assert!(count_multi(MultiFamily::General, 7, 3).is_ok());
        assert!(count_multi(MultiFamily::General, 1, 3).is_err());
        assert!(count_multi(MultiFamily::General, 2, 0).is_err());
    }

    #[test]
    fn overflow_is_an_error() {
        assert!(count_multi(MultiFamily::General, 2, 64).is_err());
        assert_eq!(count_multi(MultiFamily::General, 2, 63).unwrap(), u128::MAX / 4);
    }

    #[test]
    fn structure_strings() {
        assert_eq!(x_subalgebra_structure(2, 2).unwrap(), "su(2) ⊗ u(1) ⊗ su(2)");
        assert_eq!(
            x_subalgebra_structure(2, 3).unwrap(),
            "[su(2) ⊗ u(1) ⊗ su(2)] ⊗ [u(1)] ⊗ [su(2) ⊗ u(1) ⊗ su(2)]"
        );
        let s = x_subalgebra_structure(3, 2).unwrap();
        assert_eq!(s.matches("su^(X)(3)").count(), 3);
        assert_eq!(s.matches("u(1)").count(), 4);
        assert!(x_subalgebra_structure(4, 2).is_err());
    }

    #[test]
    fn structure_counts_match() {
        for n in 1..=6 {
            let q = x_subalgebra_structure(2, n).unwrap();
            let su2 = q.matches("su(2)").count() as u128;
            let u1 = q.matches("u(1)").count() as u128;
            assert_eq!(su2, count_multi(MultiFamily::Su2Blocks, 2, n).unwrap());
            assert_eq!(u1, count_multi(MultiFamily::U1Blocks, 2, n).unwrap());
            assert_eq!(3 * su2 + u1, count_multi(MultiFamily::X, 2, n).unwrap());

            let t = x_subalgebra_structure(3, n).unwrap();
            let su3 = t.matches("su^(X)(3)").count() as u128;
            let u1 = t.matches("u(1)").count() as u128;
            assert_eq!(4 * su3 + u1, count_multi(MultiFamily::X, 3, n).unwrap());
        }
    }

    #[test]
    fn table_display_lists_every_row() {
        let text = alloc::string::ToString::to_string(&table2());
        assert!(text.contains("number of qubits"));
        assert!(text.contains("2(3^(n+1)-5)"));
        assert_eq!(text.lines().count(), 10);
    }
}
