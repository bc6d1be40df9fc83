use std::fmt::Write;

use xdhh_core::domains::maxsat::{CnfFormula, Literal};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DimacsError {
    #[error("line {line}: malformed header: {reason}")]
    MalformedHeader { line: usize, reason: String },
    #[error("line {line}: literal {literal} out of range for {num_vars} variables")]
    LiteralOutOfRange { line: usize, literal: String, num_vars: usize },
    #[error("last clause is not terminated by 0")]
    UnterminatedClause,
}

fn header_error(line: usize, reason: impl Into<String>) -> DimacsError {
    DimacsError::MalformedHeader {
        line,
        reason: reason.into(),
    }
}

/// Parses DIMACS CNF.
///
/// Comment lines start with `c`; a line starting with `%` ends the
/// clause section (as in the SATLIB benchmark files).
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(header_error(line, "second problem line"));
            }
            let parts: Vec<&str> = trimmed.split_whitespace().collect();
            if parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
                return Err(header_error(line, "expected `p cnf VARS CLAUSES`"));
            }
            let vars = parts[2]
                .parse()
                .map_err(|_| header_error(line, format!("bad variable count {:?}", parts[2])))?;
            let count = parts[3]
                .parse()
                .map_err(|_| header_error(line, format!("bad clause count {:?}", parts[3])))?;
            header = Some((vars, count));
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(header_error(line, "clause data before the problem line"));
        };
        for tok in trimmed.split_whitespace() {
            let out_of_range = || DimacsError::LiteralOutOfRange {
                line,
                literal: tok.to_string(),
                num_vars,
            };
            let k: i64 = tok.parse().map_err(|_| out_of_range())?;
            if k == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            if k.unsigned_abs() > num_vars as u64 {
                return Err(out_of_range());
            }
            current.push(Literal::from_dimacs(k).ok_or_else(out_of_range)?);
        }
    }

    let Some((num_vars, count)) = header else {
        return Err(header_error(last_line, "missing problem line"));
    };
    if !current.is_empty() {
        return Err(DimacsError::UnterminatedClause);
    }
    if clauses.len() != count {
        return Err(header_error(
            last_line,
            format!("header declares {count} clauses, found {}", clauses.len()),
        ));
    }
    if let Some(i) = clauses.iter().position(Vec::is_empty) {
        return Err(header_error(last_line, format!("clause {} is empty", i + 1)));
    }
    CnfFormula::new(num_vars, clauses).map_err(|e| header_error(last_line, e.to_string()))
}

pub fn write_dimacs(formula: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", formula.num_vars(), formula.num_clauses());
    for clause in formula.clauses() {
        for lit in clause {
            write!(out, "{} ", lit.to_dimacs()).unwrap();
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_variable_clause() {
        let f = parse_dimacs("p cnf 2 1\n1 -2 0").unwrap();
        assert_eq!(f.num_vars(), 2);
        assert_eq!(f.clauses(), &[vec![Literal::positive(0), Literal::negative(1)]]);
    }

    #[test]
    fn worked_formula() {
        let f = parse_dimacs("p cnf 4 3\n1 -2 -3 0\n-1 3 4 0\n2 -3 -4 0").unwrap();
        assert_eq!((f.num_vars(), f.num_clauses()), (4, 3));
        assert_eq!(f.count_broken(&[false, false, true, false]), 0);
        assert_eq!(f.count_broken(&[true; 4]), 0);
    }

    #[test]
    fn comments_and_multiline_clauses() {
        let f = parse_dimacs("c hello\np cnf 3 2\n1\n2 0 -3\n0\n%\n0\n").unwrap();
        assert_eq!(f.num_clauses(), 2);
        assert_eq!(f.clauses()[1], vec![Literal::negative(2)]);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_dimacs("p cnf 2 2\n1 -2 0"),
            Err(DimacsError::MalformedHeader { .. })
        ));
        assert!(matches!(parse_dimacs("1 2 0"), Err(DimacsError::MalformedHeader { .. })));
        assert!(matches!(parse_dimacs("p sat 2 1\n1 0"), Err(DimacsError::MalformedHeader { .. })));
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n1 3 0"),
            Err(DimacsError::LiteralOutOfRange { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n1 x 0"),
            Err(DimacsError::LiteralOutOfRange { .. })
        ));
        assert_eq!(parse_dimacs("p cnf 2 1\n1 -2"), Err(DimacsError::UnterminatedClause));
    }

    #[test]
    fn round_trip() {
        let text = "p cnf 3 2\n1 -3 0\n-2 0\n";
        assert_eq!(write_dimacs(&parse_dimacs(text).unwrap()), text);
    }
}
