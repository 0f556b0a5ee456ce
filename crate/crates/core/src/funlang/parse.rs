use std::collections::BTreeMap;

use thiserror::Error;

use super::FunExpr;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("{line}:{col}: `{name}` takes {expected} argument(s), found {found}")]
    Arity {
        line: usize,
        col: usize,
        name: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{line}:{col}: `mod` requires a modulus >= 1")]
    ModZero { line: usize, col: usize },
    #[error("{line}:{col}: duplicate table key {key}")]
    DuplicateKey { line: usize, col: usize, key: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Nat(u64),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Arrow,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    let (mut line, mut line_start) = (1usize, 0usize);
    while let Some(&(i, c)) = chars.peek() {
        let col = text[line_start..i].chars().count() + 1;
        let push = move |out: &mut Vec<Token>, tok| out.push(Token { tok, line, col });
        if c == '\n' {
            chars.next();
            line += 1;
            line_start = i + 1;
        } else if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = j + 1;
                chars.next();
            }
            let value = text[i..end]
                .parse::<u64>()
                .map_err(|_| ParseError::Syntax {
                    line,
                    col,
                    message: format!("number `{}` out of range", &text[i..end]),
                })?;
            push(&mut out, Tok::Nat(value));
        } else if c.is_ascii_alphabetic() {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !d.is_ascii_alphanumeric() {
                    break;
                }
                end = j + 1;
                chars.next();
            }
            push(&mut out, Tok::Word(text[i..end].to_ascii_lowercase()));
        } else {
            chars.next();
            let tok = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                ',' => Tok::Comma,
                '-' if matches!(chars.peek(), Some((_, '>'))) => {
                    chars.next();
                    Tok::Arrow
                }
                other => {
                    return Err(ParseError::Syntax {
                        line,
                        col,
                        message: format!("unexpected character `{other}`"),
                    })
                }
            };
            push(&mut out, tok);
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        let tokens = tokenize(text)?;
        let lines: Vec<&str> = text.split('\n').collect();
        let end = (
            lines.len(),
            lines.last().map_or(0, |l| l.chars().count()) + 1,
        );
        Ok(Parser {
            tokens,
            pos: 0,
            end,
        })
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map_or(self.end, |t| (t.line, t.col))
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let (line, col) = self.here();
        Err(ParseError::Syntax {
            line,
            col,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn bump(&mut self) -> Option<Tok> {
        let tok = self.tokens.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        tok
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn nat(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Some(Tok::Nat(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            _ => self.error("expected a natural number"),
        }
    }

    fn args(&mut self, name: &'static str, expected: usize) -> Result<Vec<FunExpr>, ParseError> {
        let (line, col) = self.here();
        self.expect(Tok::LParen, &format!("`(` after `{name}`"))?;
        let mut args = Vec::new();
        if self.peek() != Some(&Tok::RParen) {
            loop {
                args.push(self.expr()?);
                match self.peek() {
                    Some(Tok::Comma) => self.pos += 1,
                    Some(Tok::RParen) => break,
                    _ => return self.error("expected `,` or `)`"),
                }
            }
        }
        self.pos += 1;
        if args.len() != expected {
            return Err(ParseError::Arity {
                line,
                col,
                name,
                expected,
                found: args.len(),
            });
        }
        Ok(args)
    }

    fn binary(
        &mut self,
        name: &'static str,
        build: fn(FunExpr, FunExpr) -> FunExpr,
    ) -> Result<FunExpr, ParseError> {
        let mut args = self.args(name, 2)?.into_iter();
        let (a, b) = (args.next().unwrap(), args.next().unwrap());
        Ok(build(a, b))
    }

    fn table(&mut self) -> Result<FunExpr, ParseError> {
        self.expect(Tok::LBrace, "`{` after `table`")?;
        let mut overrides = BTreeMap::new();
        loop {
            match self.peek() {
                Some(Tok::RBrace) => {
                    self.pos += 1;
                    break;
                }
                Some(Tok::Comma) => self.pos += 1,
                Some(Tok::Nat(_)) => {
                    let (line, col) = self.here();
                    let key = self.nat()?;
                    self.expect(Tok::Arrow, "`->`")?;
                    let value = self.nat()?;
                    if overrides.insert(key, value).is_some() {
                        return Err(ParseError::DuplicateKey { line, col, key });
                    }
                }
                _ => return self.error("expected a table entry or `}`"),
            }
        }
        match self.bump() {
            Some(Tok::Word(w)) if w == "else" => {}
            _ => {
                self.pos -= 1;
                return self.error("expected `else` after table");
            }
        }
        Ok(FunExpr::Table {
            overrides,
            default: Box::new(self.expr()?),
        })
    }

    fn expr(&mut self) -> Result<FunExpr, ParseError> {
        let word = match self.peek() {
            Some(Tok::Word(w)) => w.clone(),
            Some(_) => return self.error("expected an expression"),
            None => return self.error("unexpected end of input"),
        };
        let (line, col) = self.here();
        self.pos += 1;
        Ok(match word.as_str() {
            "id" => FunExpr::Id,
            "succ" => FunExpr::Succ,
            "double" => FunExpr::Double,
            "odd1" => FunExpr::DoublePlus1,
            "half" => FunExpr::Half,
            "proj0" => FunExpr::Proj0,
            "proj1" => FunExpr::Proj1,
            "const" => FunExpr::Const(self.nat()?),
            "mod" => match self.nat()? {
                0 => return Err(ParseError::ModZero { line, col }),
                k => FunExpr::Mod(k),
            },
            "pair" => self.binary("pair", FunExpr::pair)?,
            "compose" => self.binary("compose", FunExpr::compose)?,
            "add" => self.binary("add", FunExpr::add)?,
            "mul" => self.binary("mul", FunExpr::mul)?,
            "ifless" => {
                let mut a = self.args("ifless", 4)?.into_iter();
                let mut next = || a.next().unwrap();
                FunExpr::if_less(next(), next(), next(), next())
            }
            "table" => self.table()?,
            other => {
                self.pos -= 1;
                return self.error(format!("unknown function `{other}`"));
            }
        })
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.tokens.len() {
            self.error("trailing input")
        } else {
            Ok(())
        }
    }
}

/// Parses a single expression; whitespace and keyword case are ignored.
pub fn parse(text: &str) -> Result<FunExpr, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parses exactly `count` expressions written one after another.
pub fn parse_many(text: &str, count: usize) -> Result<Vec<FunExpr>, ParseError> {
    let mut p = Parser::new(text)?;
    let out = (0..count)
        .map(|_| p.expr())
        .collect::<Result<Vec<_>, _>>()?;
    p.finish()?;
    Ok(out)
}
