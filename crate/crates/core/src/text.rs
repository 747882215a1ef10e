//! Text format for words and presentations.
//!
//! Presentations are written `< a, t | t a^2 t^-1 a^-3 >`. Words use
//! juxtaposition, integer exponents after `^`, parenthesized subwords,
//! commutator sugar `[u,v] = u v u^-1 v^-1`, and a relation `u = v` is stored
//! as the relator `u v^-1`. Whitespace is optional: a run of letters such as
//! `tat` is split into declared generator names.

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::Word;

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Pipe,
    Less,
    Greater,
    Equals,
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek_pos(&mut self) -> usize {
        self.skip_ws();
        self.pos
    }

    fn next(&mut self) -> Result<(usize, Tok)> {
        self.skip_ws();
        let start = self.pos;
        if self.pos >= self.src.len() {
            return Ok((start, Tok::End));
        }
        let c = self.src[self.pos];
        self.pos += 1;
        let tok = match c {
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b',' => Tok::Comma,
            b'|' => Tok::Pipe,
            b'<' => Tok::Less,
            b'>' => Tok::Greater,
            b'=' => Tok::Equals,
            b'-' | b'0'..=b'9' => {
                let mut end = self.pos;
                while end < self.src.len() && self.src[end].is_ascii_digit() {
                    end += 1;
                }
                let text = std::str::from_utf8(&self.src[start..end]).unwrap();
                let n: i64 = text.parse().map_err(|_| Error::Parse {
                    pos: start,
                    msg: format!("bad integer `{}`", text),
                })?;
                self.pos = end;
                Tok::Int(n)
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let mut end = self.pos;
                while end < self.src.len()
                    && (self.src[end].is_ascii_alphanumeric() || self.src[end] == b'_')
                {
                    end += 1;
                }
                let text = std::str::from_utf8(&self.src[start..end]).unwrap().to_string();
                self.pos = end;
                Tok::Ident(text)
            }
            c => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unexpected character `{}`", c as char),
                })
            }
        };
        Ok((start, tok))
    }

    fn peek(&mut self) -> Result<Tok> {
        let save = self.pos;
        let (_, t) = self.next()?;
        self.pos = save;
        Ok(t)
    }
}

/// Splits an identifier run like `tat` into declared generator names,
/// deterministically when several decompositions exist.
fn split_names(ident: &str, pos: usize, names: &[String]) -> Result<Vec<usize>> {
    let n = ident.len();
    // reachable[i]: how to reach position i (name index, previous position)
    let mut back: Vec<Option<(usize, usize)>> = vec![None; n + 1];
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        if i == n {
            continue;
        }
        let mut candidates: Vec<(usize, usize)> = names
            .iter()
            .enumerate()
            .filter(|(_, nm)| ident[i..].starts_with(nm.as_str()))
            .map(|(gi, nm)| (nm.len(), gi))
            .collect();
        candidates.sort();
        for (len, gi) in candidates {
            let j = i + len;
            if back[j].is_none() {
                back[j] = Some((gi, i));
                stack.push(j);
            }
        }
    }
    if n == 0 || back[n].is_none() {
        return Err(Error::UnknownGenerator(format!(
            "{} (at byte {})",
            ident, pos
        )));
    }
    let mut out = Vec::new();
    let mut i = n;
    while i > 0 {
        let (gi, prev) = back[i].unwrap();
        out.push(gi);
        i = prev;
    }
    out.reverse();
    Ok(out)
}

struct WordParser<'a, 'b> {
    lex: &'b mut Lexer<'a>,
    names: &'b [String],
}

impl WordParser<'_, '_> {
    /// Parses a word, stopping at any token that cannot start an atom.
    fn word(&mut self) -> Result<Word> {
        let mut out = Word::identity();
        loop {
            match self.lex.peek()? {
                Tok::Ident(_) | Tok::LParen | Tok::LBracket => {
                    let atom = self.term()?;
                    out = out.multiply(&atom);
                }
                Tok::Int(1) => {
                    // `1` denotes the identity word
                    self.lex.next()?;
                }
                _ => return Ok(out),
            }
        }
    }

    fn term(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        if self.lex.peek()? == Tok::Caret {
            self.lex.next()?;
            let e = self.exponent()?;
            Ok(atom.pow(e))
        } else {
            Ok(atom)
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let (pos, tok) = self.lex.next()?;
        match tok {
            Tok::Int(n) => Ok(n),
            _ => Err(Error::Parse {
                pos,
                msg: "expected integer exponent".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<Word> {
        let (pos, tok) = self.lex.next()?;
        match tok {
            Tok::Ident(id) => {
                let gens = split_names(&id, pos, self.names)?;
                // an exponent after a juxtaposed run binds to the last name
                if gens.len() > 1 && self.lex.peek()? == Tok::Caret {
                    self.lex.next()?;
                    let e = self.exponent()?;
                    let mut w = Word::identity();
                    for &g in &gens[..gens.len() - 1] {
                        w = w.multiply(&Word::generator(g));
                    }
                    return Ok(w.multiply(&Word::generator_pow(gens[gens.len() - 1], e)));
                }
                let mut w = Word::identity();
                for g in gens {
                    w = w.multiply(&Word::generator(g));
                }
                Ok(w)
            }
            Tok::LParen => {
                let w = self.word()?;
                let (pos, tok) = self.lex.next()?;
                if tok != Tok::RParen {
                    return Err(Error::Parse {
                        pos,
                        msg: "expected `)`".into(),
                    });
                }
                Ok(w)
            }
            Tok::LBracket => {
                let u = self.word()?;
                let (pos, tok) = self.lex.next()?;
                if tok != Tok::Comma {
                    return Err(Error::Parse {
                        pos,
                        msg: "expected `,` in commutator".into(),
                    });
                }
                let v = self.word()?;
                let (pos, tok) = self.lex.next()?;
                if tok != Tok::RBracket {
                    return Err(Error::Parse {
                        pos,
                        msg: "expected `]`".into(),
                    });
                }
                Ok(u.commutator(&v))
            }
            t => Err(Error::Parse {
                pos,
                msg: format!("expected word, found {:?}", t),
            }),
        }
    }
}

/// Parses a word over the given generator-name table. The result is freely
/// reduced; commutator and power sugar are expanded.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word> {
    let mut lex = Lexer::new(text);
    let mut p = WordParser {
        lex: &mut lex,
        names,
    };
    let w = p.word()?;
    let (pos, tok) = lex.next()?;
    if tok != Tok::End {
        return Err(Error::Parse {
            pos,
            msg: format!("trailing input {:?}", tok),
        });
    }
    Ok(w)
}

/// Parses `< gens | relators >`. Relations `u = v` become relators `u v^-1`.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut lex = Lexer::new(text);
    let (pos, tok) = lex.next()?;
    if tok != Tok::Less {
        return Err(Error::Parse {
            pos,
            msg: "expected `<`".into(),
        });
    }
    let mut names: Vec<String> = Vec::new();
    loop {
        match lex.peek()? {
            Tok::Pipe | Tok::Greater => break,
            _ => {}
        }
        let (pos, tok) = lex.next()?;
        match tok {
            Tok::Ident(id) => {
                if names.contains(&id) {
                    return Err(Error::Parse {
                        pos,
                        msg: format!("duplicate generator `{}`", id),
                    });
                }
                names.push(id);
            }
            t => {
                return Err(Error::Parse {
                    pos,
                    msg: format!("expected generator name, found {:?}", t),
                })
            }
        }
        if lex.peek()? == Tok::Comma {
            lex.next()?;
        }
    }
    let mut relators: Vec<Word> = Vec::new();
    if lex.peek()? == Tok::Pipe {
        lex.next()?;
        loop {
            if lex.peek()? == Tok::Greater {
                break;
            }
            let mut p = WordParser {
                lex: &mut lex,
                names: &names,
            };
            let u = p.word()?;
            let rel = if lex.peek()? == Tok::Equals {
                lex.next()?;
                let mut p = WordParser {
                    lex: &mut lex,
                    names: &names,
                };
                let v = p.word()?;
                u.multiply(&v.inverse())
            } else {
                u
            };
            relators.push(rel);
            match lex.peek()? {
                Tok::Comma => {
                    lex.next()?;
                }
                Tok::Greater => break,
                t => {
                    let pos = lex.peek_pos();
                    return Err(Error::Parse {
                        pos,
                        msg: format!("expected `,` or `>`, found {:?}", t),
                    });
                }
            }
        }
    }
    let (pos, tok) = lex.next()?;
    if tok != Tok::Greater {
        return Err(Error::Parse {
            pos,
            msg: "expected `>`".into(),
        });
    }
    let (pos, tok) = lex.next()?;
    if tok != Tok::End {
        return Err(Error::Parse {
            pos,
            msg: "trailing input after `>`".into(),
        });
    }
    Presentation::new(names, relators)
}

pub fn word_to_string(w: &Word, names: &[String]) -> String {
    if w.is_identity() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    for &(g, e) in w.runs() {
        if e == 1 {
            parts.push(names[g].clone());
        } else {
            parts.push(format!("{}^{}", names[g], e));
        }
    }
    parts.join(" ")
}

pub fn presentation_to_string(p: &Presentation) -> String {
    let gens = p.names().join(", ");
    let rels: Vec<String> = p
        .relators()
        .iter()
        .map(|r| word_to_string(r, p.names()))
        .collect();
    if rels.is_empty() {
        format!("< {} | >", gens)
    } else {
        format!("< {} | {} >", gens, rels.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn basic_word() {
        let ns = names(&["a", "t"]);
        let w = parse_word("t a^2 t^-1 a^-1", &ns).unwrap();
        assert_eq!(w.runs(), &[(1, 1), (0, 2), (1, -1), (0, -1)]);
    }

    #[test]
    fn commutator_sugar() {
        let ns = names(&["a", "t"]);
        let w = parse_word("[a,t]", &ns).unwrap();
        assert_eq!(w.runs(), &[(0, 1), (1, 1), (0, -1), (1, -1)]);
    }

    #[test]
    fn free_reduction_in_parse() {
        let ns = names(&["a"]);
        assert!(parse_word("a a^-1", &ns).unwrap().is_identity());
    }

    #[test]
    fn juxtaposed_names() {
        let ns = names(&["a", "t"]);
        let w = parse_word("t^6at^-4a^-1t^-2a^-1", &ns).unwrap();
        assert_eq!(w.exponent_sum(1), 0);
        assert_eq!(w.exponent_sum(0), -1);
        assert_eq!(w.length(), 15);
    }

    #[test]
    fn unknown_generator_reported() {
        let ns = names(&["a"]);
        assert!(matches!(
            parse_word("b", &ns),
            Err(Error::UnknownGenerator(_))
        ));
    }

    #[test]
    fn presentation_roundtrip() {
        let p = parse_presentation("< a, t | t a^2 t^-1 a^-3 >").unwrap();
        assert_eq!(p.gen_count(), 2);
        assert_eq!(p.relators().len(), 1);
        let s = presentation_to_string(&p);
        let p2 = parse_presentation(&s).unwrap();
        assert_eq!(p, p2);
    }

    #[test]
    fn relation_sugar() {
        let p = parse_presentation("< a, t | t a^2 t^-1 = a^3 >").unwrap();
        let q = parse_presentation("< a, t | t a^2 t^-1 a^-3 >").unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn serialized_words_reparse() {
        let ns = names(&["a", "t"]);
        for runs in [
            vec![(0usize, 3i64), (1, -2), (0, 1)],
            vec![(1, 1), (0, -5)],
            vec![],
        ] {
            let w = crate::word::Word::from_runs(runs);
            let text = word_to_string(&w, &ns);
            assert_eq!(parse_word(&text, &ns).unwrap(), w);
        }
    }

    #[test]
    fn parenthesized_powers() {
        let ns = names(&["a", "t"]);
        let w = parse_word("(t a t^-1) a (t a t^-1)^-1 a^-2", &ns).unwrap();
        assert_eq!(w.runs(), &[(1, 1), (0, 1), (1, -1), (0, 1), (1, 1), (0, -1), (1, -1), (0, -2)]);
    }
}
