//! Recursive-descent parser for the expression grammar
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ['-'] atom ('^' signed-int)?
//! atom   := int | 'q' | 'P' | 'L' int | '(' expr ')'
//! ```
//!
//! Errors carry the byte offset of the offending token.

use crate::error::{Error, Result};

use super::ast::ExprAst;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(i64),
    Q,
    P,
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokenize(src: &'a str) -> Result<Vec<(usize, Token)>> {
        let mut lx = Lexer {
            src: src.as_bytes(),
            pos: 0,
        };
        let mut out = Vec::new();
        while let Some((at, tok)) = lx.next_token()? {
            out.push((at, tok));
        }
        Ok(out)
    }

    fn next_token(&mut self) -> Result<Option<(usize, Token)>> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        if self.pos >= self.src.len() {
            return Ok(None);
        }
        let at = self.pos;
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => {
                self.pos += 1;
                Token::Plus
            }
            b'-' => {
                self.pos += 1;
                Token::Minus
            }
            b'*' => {
                self.pos += 1;
                Token::Star
            }
            b'/' => {
                self.pos += 1;
                Token::Slash
            }
            b'^' => {
                self.pos += 1;
                Token::Caret
            }
            b'(' => {
                self.pos += 1;
                Token::LParen
            }
            b')' => {
                self.pos += 1;
                Token::RParen
            }
            b'q' => {
                self.pos += 1;
                Token::Q
            }
            b'P' => {
                self.pos += 1;
                Token::P
            }
            b'L' => {
                self.pos += 1;
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if start == self.pos {
                    return Err(Error::Syntax {
                        position: at,
                        message: "expected a character index after `L`".into(),
                    });
                }
                let index: usize = std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| Error::Syntax {
                        position: at,
                        message: "character index out of range".into(),
                    })?;
                Token::Var(index)
            }
            b'0'..=b'9' => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let value: i64 = std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| Error::Syntax {
                        position: at,
                        message: "integer literal out of range".into(),
                    })?;
                Token::Int(value)
            }
            other => {
                return Err(Error::Syntax {
                    position: at,
                    message: format!("unexpected character `{}`", other as char),
                });
            }
        };
        Ok(Some((at, tok)))
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    index: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.index).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens
            .get(self.index)
            .map(|(at, _)| *at)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.index).map(|(_, t)| t.clone());
        if t.is_some() {
            self.index += 1;
        }
        t
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<()> {
        if self.peek() == Some(&want) {
            self.index += 1;
            Ok(())
        } else {
            Err(Error::Syntax {
                position: self.position(),
                message: format!("expected {}", what),
            })
        }
    }

    fn expr(&mut self) -> Result<ExprAst> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.index += 1;
                    acc = ExprAst::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.index += 1;
                    acc = ExprAst::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.index += 1;
                    acc = ExprAst::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Some(Token::Slash) => {
                    self.index += 1;
                    acc = ExprAst::Div(Box::new(acc), Box::new(self.factor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<ExprAst> {
        if self.peek() == Some(&Token::Minus) {
            self.index += 1;
            return Ok(ExprAst::Neg(Box::new(self.factor()?)));
        }
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.index += 1;
            let negative = if self.peek() == Some(&Token::Minus) {
                self.index += 1;
                true
            } else {
                false
            };
            match self.bump() {
                Some(Token::Int(k)) => {
                    let k = if negative { -k } else { k };
                    return Ok(ExprAst::Pow(Box::new(base), k));
                }
                _ => return Err(Error::PowerNotInteger),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ExprAst> {
        match self.bump() {
            Some(Token::Int(n)) => Ok(ExprAst::Int(n)),
            Some(Token::Q) => Ok(ExprAst::Q),
            Some(Token::P) => Ok(ExprAst::P),
            Some(Token::Var(i)) => Ok(ExprAst::Var(i)),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            Some(_) => Err(Error::Syntax {
                position: self.tokens[self.index - 1].0,
                message: "expected an integer, `q`, `P`, `L<i>` or `(`".into(),
            }),
            None => Err(Error::Syntax {
                position: self.end,
                message: "unexpected end of input".into(),
            }),
        }
    }
}

/// Parse an expression; variable bounds are checked later, during the
/// typed lowering pass.
pub fn parse_expr(text: &str) -> Result<ExprAst> {
    let tokens = Lexer::tokenize(text)?;
    let mut parser = Parser {
        tokens,
        index: 0,
        end: text.len(),
    };
    let ast = parser.expr()?;
    if parser.index != parser.tokens.len() {
        return Err(Error::Syntax {
            position: parser.position(),
            message: "trailing input".into(),
        });
    }
    Ok(ast)
}
