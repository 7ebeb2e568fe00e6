use std::collections::BTreeMap;

use super::{NGAtom, NGProgram, NGRule, Term};
use crate::error::{Error, Result};
use crate::syntax::lexer::{Token, Tokens};

/// Parses a function-free program with variables, such as
/// `p(X) :- q(X, a), not r(X).`
///
/// Equality and function symbols are rejected: both fall outside the
/// function-free, unique-names setting the decision procedures assume.
pub fn parse_ng_program(text: &str) -> Result<NGProgram> {
    let mut tokens = Tokens::new(text)?;
    let mut rules = Vec::new();
    while !tokens.at_end() {
        rules.push(rule(&mut tokens)?);
    }
    NGProgram::new(rules)
}

fn term(tokens: &mut Tokens) -> Result<Term> {
    let at = tokens.location();
    let t = match tokens.peek() {
        Some(Token::Ident(name)) | Some(Token::Number(name)) => Term::constant(name),
        Some(Token::Variable(name)) => Term::variable(name),
        _ => return Err(tokens.unexpected("expected a term")),
    };
    tokens.next();
    if matches!(tokens.peek(), Some(Token::LParen)) {
        return Err(Error::Unsupported {
            at,
            message: "function symbols are out of scope (programs must be function-free)".into(),
        });
    }
    Ok(t)
}

fn atom(tokens: &mut Tokens) -> Result<NGAtom> {
    let predicate = match tokens.peek() {
        Some(Token::Ident(name)) => name.clone(),
        _ => return Err(tokens.unexpected("expected an atom")),
    };
    tokens.next();
    let mut args = Vec::new();
    if tokens.eat(&Token::LParen) {
        loop {
            args.push(term(tokens)?);
            if !tokens.eat(&Token::Comma) {
                break;
            }
        }
        tokens.expect(&Token::RParen, "to close the argument list")?;
    }
    if matches!(tokens.peek(), Some(Token::Equality)) {
        return Err(Error::Unsupported {
            at: tokens.location(),
            message: "equality is out of scope (constants are interpreted by identity)".into(),
        });
    }
    Ok(NGAtom::new(predicate, args))
}

fn literal(tokens: &mut Tokens) -> Result<(bool, NGAtom)> {
    let negated = matches!(tokens.peek(), Some(Token::Ident(w)) if w == "not")
        && matches!(tokens.peek_at(1), Some(Token::Ident(_)));
    if negated {
        tokens.next();
    }
    if let Some(Token::Variable(_)) = tokens.peek() {
        if matches!(tokens.peek_at(1), Some(Token::Equality)) {
            return Err(Error::Unsupported {
                at: tokens.location(),
                message: "equality is out of scope (constants are interpreted by identity)".into(),
            });
        }
    }
    Ok((negated, atom(tokens)?))
}

fn rule(tokens: &mut Tokens) -> Result<NGRule> {
    let at = tokens.location();
    let mut sides: BTreeMap<(bool, bool), Vec<NGAtom>> = BTreeMap::new();
    if !matches!(tokens.peek(), Some(Token::If)) {
        loop {
            let (negated, a) = literal(tokens)?;
            sides.entry((true, negated)).or_default().push(a);
            if !tokens.eat(&Token::Or) {
                break;
            }
        }
    }
    if tokens.eat(&Token::If) && !matches!(tokens.peek(), Some(Token::Dot)) {
        loop {
            let (negated, a) = literal(tokens)?;
            sides.entry((false, negated)).or_default().push(a);
            if !tokens.eat(&Token::Comma) {
                break;
            }
        }
    }
    tokens.expect(&Token::Dot, "at the end of a rule")?;
    let mut take = |head, negated| sides.remove(&(head, negated)).unwrap_or_default();
    let rule = NGRule::new(take(true, false), take(true, true), take(false, false), take(false, true));
    rule.ok_or(Error::EmptyRule { at })
}
