use std::collections::BTreeSet;
use std::fmt::{self, Display, Formatter, Write};

use super::{Atom, Formula, Program, Rule, Signature, Theory};

/// Binding strength used to decide where parentheses go.
fn level(f: &Formula) -> u8 {
    match f {
        Formula::Bottom | Formula::Atom(_) => 5,
        _ if f.is_top() || f.as_negation().is_some() => 4,
        Formula::And(..) => 3,
        Formula::Or(..) => 2,
        Formula::Impl(..) => 1,
    }
}

fn operand(out: &mut Formatter<'_>, f: &Formula, parens: bool) -> fmt::Result {
    if parens {
        write!(out, "({f})")
    } else {
        write!(out, "{f}")
    }
}

impl Display for Formula {
    /// Prints in the theory grammar. Nested implications are always
    /// parenthesised; conjunctions and disjunctions rely on precedence.
    fn fmt(&self, out: &mut Formatter<'_>) -> fmt::Result {
        if self.is_top() {
            return out.write_str("#t");
        }
        if let Some(inner) = self.as_negation() {
            out.write_char('-')?;
            return operand(out, inner, level(inner) < 4);
        }
        match self {
            Formula::Bottom => out.write_str("#f"),
            Formula::Atom(a) => write!(out, "{a}"),
            Formula::And(l, r) => {
                operand(out, l, level(l) < 3)?;
                out.write_str(" & ")?;
                operand(out, r, level(r) <= 3)
            }
            Formula::Or(l, r) => {
                operand(out, l, level(l) < 2)?;
                out.write_str(" | ")?;
                operand(out, r, level(r) <= 2)
            }
            Formula::Impl(l, r) => {
                operand(out, l, level(l) <= 1)?;
                out.write_str(" -> ")?;
                operand(out, r, level(r) <= 1)
            }
        }
    }
}

fn declare_unused(out: &mut Formatter<'_>, signature: &Signature, used: &BTreeSet<Atom>) -> fmt::Result {
    let extra: Vec<&str> = signature
        .atoms()
        .iter()
        .filter(|a| !used.contains(*a))
        .map(Atom::name)
        .collect();
    if !extra.is_empty() {
        writeln!(out, "#atoms {}.", extra.join(", "))?;
    }
    Ok(())
}

impl Display for Theory {
    /// One formula per line. Signature atoms that occur in no formula are
    /// emitted as an `#atoms` declaration so the output parses back to the
    /// same theory.
    fn fmt(&self, out: &mut Formatter<'_>) -> fmt::Result {
        let used: BTreeSet<Atom> = self.formulas().iter().flat_map(Formula::atoms).collect();
        declare_unused(out, self.signature(), &used)?;
        for f in self.formulas() {
            writeln!(out, "{f}.")?;
        }
        Ok(())
    }
}

impl Display for Rule {
    fn fmt(&self, out: &mut Formatter<'_>) -> fmt::Result {
        let head: Vec<String> = self
            .head_pos
            .iter()
            .map(ToString::to_string)
            .chain(self.head_neg.iter().map(|a| format!("not {a}")))
            .collect();
        let body: Vec<String> = self
            .body_pos
            .iter()
            .map(ToString::to_string)
            .chain(self.body_neg.iter().map(|a| format!("not {a}")))
            .collect();
        out.write_str(&head.join(" | "))?;
        if !body.is_empty() {
            if !head.is_empty() {
                out.write_char(' ')?;
            }
            write!(out, ":- {}", body.join(", "))?;
        }
        out.write_char('.')
    }
}

impl Display for Program {
    fn fmt(&self, out: &mut Formatter<'_>) -> fmt::Result {
        let used: BTreeSet<Atom> = self.rules().iter().flat_map(Rule::atoms).collect();
        declare_unused(out, self.signature(), &used)?;
        for r in self.rules() {
            writeln!(out, "{r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use crate::syntax::{parse_formula, parse_program};

    fn show(text: &str) -> String {
        parse_formula(text).unwrap().to_string()
    }

    #[test]
    fn negation_and_truth_constants() {
        assert_eq!(show("-(-a)"), "--a");
        assert_eq!(show("#t"), "#t");
        assert_eq!(show("#f | a"), "#f | a");
        assert_eq!(show("-(a & b)"), "-(a & b)");
        assert_eq!(show("-(a -> b)"), "-(a -> b)");
    }

    #[test]
    fn nested_implications_are_parenthesised() {
        assert_eq!(show("--a & (a -> --a -> a)"), "--a & (a -> (--a -> a))");
        assert_eq!(show("(a -> b) -> c"), "(a -> b) -> c");
    }

    #[test]
    fn associativity_is_preserved() {
        assert_eq!(show("a & (b & c)"), "a & (b & c)");
        assert_eq!(show("(a & b) & c"), "a & b & c");
        assert_eq!(show("(a | b) & c"), "(a | b) & c");
        assert_eq!(show("a | b & c"), "a | b & c");
    }

    #[test]
    fn rules() {
        let p = parse_program("a | b.\na :- not b.\nnot a :- b.\n:- a, not c.").unwrap();
        let lines: Vec<String> = p.rules().iter().map(ToString::to_string).collect();
        assert_eq!(lines, ["a | b.", "a :- not b.", "not a :- b.", ":- a, not c."]);
    }
}
