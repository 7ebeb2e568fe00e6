//! Recursive-descent parsers for the theory and program grammars.
//!
//! Theory statements are formulas terminated by `.`. Precedence, tightest
//! first: `-`, `&`, `|`, `->` (right-associative), `<->`. Program statements
//! have the shape `h1 | … | not hk :- b1, …, not bn.`. Both grammars accept
//! `% comments` and `#atoms a, b, c.` declarations of extra signature atoms.

use std::collections::BTreeSet;

use super::lexer::{Token, Tokens};
use super::{Atom, Formula, Program, Rule, Theory};
use crate::error::{Error, Result};

pub fn parse_theory(text: &str) -> Result<Theory> {
    let mut tokens = Tokens::new(text)?;
    let mut formulas = Vec::new();
    let mut declared = Declarations::default();
    while !tokens.at_end() {
        if declared.try_parse(&mut tokens)? {
            continue;
        }
        formulas.push(formula(&mut tokens)?);
        tokens.expect(&Token::Dot, "at the end of a formula")?;
    }
    Theory::with_extra_atoms(formulas, declared.atoms)
}

/// Parses a single formula, with or without a terminating `.`.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut tokens = Tokens::new(text)?;
    let f = formula(&mut tokens)?;
    tokens.eat(&Token::Dot);
    if !tokens.at_end() {
        return Err(tokens.unexpected("expected end of input"));
    }
    Ok(f)
}

pub fn parse_program(text: &str) -> Result<Program> {
    let mut tokens = Tokens::new(text)?;
    let mut rules = Vec::new();
    let mut declared = Declarations::default();
    while !tokens.at_end() {
        if declared.try_parse(&mut tokens)? {
            continue;
        }
        rules.push(rule(&mut tokens)?);
    }
    Program::with_extra_atoms(rules, declared.atoms)
}

#[derive(Default)]
struct Declarations {
    atoms: BTreeSet<Atom>,
}

impl Declarations {
    fn try_parse(&mut self, tokens: &mut Tokens) -> Result<bool> {
        if !tokens.eat(&Token::Declare) {
            return Ok(false);
        }
        loop {
            let atom = atom_name(tokens)?;
            if !self.atoms.insert(atom.clone()) {
                return Err(Error::DuplicateAtom {
                    atom: atom.name().to_owned(),
                });
            }
            if !tokens.eat(&Token::Comma) {
                break;
            }
        }
        tokens.expect(&Token::Dot, "after an atom declaration")?;
        Ok(true)
    }
}

fn atom_name(tokens: &mut Tokens) -> Result<Atom> {
    match tokens.peek() {
        Some(Token::Ident(name)) => {
            let atom = Atom::new(name);
            tokens.next();
            Ok(atom)
        }
        _ => Err(tokens.unexpected("expected an atom")),
    }
}

fn formula(tokens: &mut Tokens) -> Result<Formula> {
    let mut lhs = implication(tokens)?;
    while tokens.eat(&Token::Iff) {
        let rhs = implication(tokens)?;
        lhs = Formula::iff(lhs, rhs);
    }
    Ok(lhs)
}

fn implication(tokens: &mut Tokens) -> Result<Formula> {
    let lhs = disjunction(tokens)?;
    if tokens.eat(&Token::Arrow) {
        let rhs = implication(tokens)?;
        Ok(Formula::implies(lhs, rhs))
    } else {
        Ok(lhs)
    }
}

fn disjunction(tokens: &mut Tokens) -> Result<Formula> {
    let mut lhs = conjunction(tokens)?;
    while tokens.eat(&Token::Or) {
        lhs = Formula::or(lhs, conjunction(tokens)?);
    }
    Ok(lhs)
}

fn conjunction(tokens: &mut Tokens) -> Result<Formula> {
    let mut lhs = unary(tokens)?;
    while tokens.eat(&Token::And) {
        lhs = Formula::and(lhs, unary(tokens)?);
    }
    Ok(lhs)
}

fn unary(tokens: &mut Tokens) -> Result<Formula> {
    if tokens.eat(&Token::Minus) {
        return Ok(Formula::not(unary(tokens)?));
    }
    match tokens.peek() {
        Some(Token::Falsum) => {
            tokens.next();
            Ok(Formula::Bottom)
        }
        Some(Token::Verum) => {
            tokens.next();
            Ok(Formula::top())
        }
        Some(Token::LParen) => {
            tokens.next();
            let inner = formula(tokens)?;
            tokens.expect(&Token::RParen, "to close `(`")?;
            Ok(inner)
        }
        Some(Token::Ident(_)) => Ok(Formula::Atom(atom_name(tokens)?)),
        _ => Err(tokens.unexpected("expected a formula")),
    }
}

fn literal(tokens: &mut Tokens) -> Result<(bool, Atom)> {
    let negated = matches!(tokens.peek(), Some(Token::Ident(w)) if w == "not")
        && matches!(tokens.peek_at(1), Some(Token::Ident(_)));
    if negated {
        tokens.next();
    }
    Ok((negated, atom_name(tokens)?))
}

fn rule(tokens: &mut Tokens) -> Result<Rule> {
    let at = tokens.location();
    let mut rule = Rule::default();
    if !matches!(tokens.peek(), Some(Token::If)) {
        loop {
            let (negated, atom) = literal(tokens)?;
            if negated {
                rule.head_neg.insert(atom);
            } else {
                rule.head_pos.insert(atom);
            }
            if !tokens.eat(&Token::Or) {
                break;
            }
        }
    }
    if tokens.eat(&Token::If) && !matches!(tokens.peek(), Some(Token::Dot)) {
        loop {
            let (negated, atom) = literal(tokens)?;
            if negated {
                rule.body_neg.insert(atom);
            } else {
                rule.body_pos.insert(atom);
            }
            if !tokens.eat(&Token::Comma) {
                break;
            }
        }
    }
    tokens.expect(&Token::Dot, "at the end of a rule")?;
    if rule == Rule::default() {
        return Err(Error::EmptyRule { at });
    }
    Ok(rule)
}
