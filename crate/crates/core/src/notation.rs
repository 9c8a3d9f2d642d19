//! Text format for rooted ribbon trees.
//!
//! ```text
//! Tree := "*" | "(" Tree ("," Tree)+ ")"
//! ```
//!
//! Whitespace is allowed between tokens and dropped. The `i`-th `*` from the
//! left is leaf `i`.

use std::str::FromStr;

use thiserror::Error;

use crate::tree::RibbonTree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    EmptyInput,
    #[error("unbalanced parentheses at byte {offset}")]
    UnbalancedParens { offset: usize },
    #[error("node opened at byte {offset} has a single child")]
    SingleChildNode { offset: usize },
    #[error("unexpected {found:?} at byte {offset}")]
    UnexpectedChar { offset: usize, found: char },
    #[error("trailing input at byte {offset}")]
    TrailingGarbage { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match *self {
            ParseError::EmptyInput => 0,
            ParseError::UnbalancedParens { offset }
            | ParseError::SingleChildNode { offset }
            | ParseError::UnexpectedChar { offset, .. }
            | ParseError::TrailingGarbage { offset } => offset,
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn tree(&mut self) -> Result<RibbonTree, ParseError> {
        match self.peek() {
            Some('*') => {
                self.pos += 1;
                Ok(RibbonTree::leaf())
            }
            Some('(') => {
                let open = self.pos;
                self.pos += 1;
                let mut children = vec![self.tree()?];
                loop {
                    match self.peek() {
                        Some(',') => {
                            self.pos += 1;
                            children.push(self.tree()?);
                        }
                        Some(')') => {
                            self.pos += 1;
                            break;
                        }
                        None => return Err(ParseError::UnbalancedParens { offset: open }),
                        Some(found) => {
                            return Err(ParseError::UnexpectedChar {
                                offset: self.pos,
                                found,
                            })
                        }
                    }
                }
                RibbonTree::node(children).map_err(|_| ParseError::SingleChildNode { offset: open })
            }
            Some(')') => Err(ParseError::UnbalancedParens { offset: self.pos }),
            Some(found) => Err(ParseError::UnexpectedChar {
                offset: self.pos,
                found,
            }),
            None => Err(ParseError::UnbalancedParens { offset: self.pos }),
        }
    }
}

pub fn parse(text: &str) -> Result<RibbonTree, ParseError> {
    let mut parser = Parser { src: text, pos: 0 };
    if parser.peek().is_none() {
        return Err(ParseError::EmptyInput);
    }
    let tree = parser.tree()?;
    match parser.peek() {
        None => Ok(tree),
        Some(')') => Err(ParseError::UnbalancedParens { offset: parser.pos }),
        Some(_) => Err(ParseError::TrailingGarbage { offset: parser.pos }),
    }
}

/// Whitespace-free text; `parse(&serialize(t)) == t`.
pub fn serialize(tree: &RibbonTree) -> String {
    tree.to_string()
}

impl FromStr for RibbonTree {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{caterpillar, corolla};

    #[test]
    fn parses_examples() {
        assert_eq!(parse("(*,(*,*))").unwrap(), caterpillar(3).unwrap());
        assert_eq!(parse("*").unwrap(), RibbonTree::leaf());
        assert_eq!(
            parse(" ( * ,\n(*, *) )\t").unwrap(),
            caterpillar(3).unwrap()
        );
    }

    #[test]
    fn serializes_examples() {
        assert_eq!(serialize(&corolla(3).unwrap()), "(*,*,*)");
        assert_eq!(serialize(&caterpillar(4).unwrap()), "(*,(*,(*,*)))");
        assert_eq!(serialize(&RibbonTree::leaf()), "*");
    }

    #[test]
    fn reports_errors_with_offsets() {
        assert_eq!(parse("(*)"), Err(ParseError::SingleChildNode { offset: 0 }));
        assert_eq!(
            parse("(*,(*))"),
            Err(ParseError::SingleChildNode { offset: 3 })
        );
        assert_eq!(parse(""), Err(ParseError::EmptyInput));
        assert_eq!(parse("   "), Err(ParseError::EmptyInput));
        assert_eq!(
            parse("(*,*"),
            Err(ParseError::UnbalancedParens { offset: 0 })
        );
        assert_eq!(
            parse("(*,(*,*)"),
            Err(ParseError::UnbalancedParens { offset: 0 })
        );
        assert_eq!(
            parse("(*,*))"),
            Err(ParseError::UnbalancedParens { offset: 5 })
        );
        assert_eq!(parse(")"), Err(ParseError::UnbalancedParens { offset: 0 }));
        assert_eq!(parse("**"), Err(ParseError::TrailingGarbage { offset: 1 }));
        assert_eq!(
            parse("(*,*) *"),
            Err(ParseError::TrailingGarbage { offset: 6 })
        );
        assert_eq!(
            parse("(*,x)"),
            Err(ParseError::UnexpectedChar {
                offset: 3,
                found: 'x'
            })
        );
        assert_eq!(
            parse("(*;*)"),
            Err(ParseError::UnexpectedChar {
                offset: 2,
                found: ';'
            })
        );
        assert_eq!(
            parse("(*,)"),
            Err(ParseError::UnbalancedParens { offset: 3 })
        );
        assert_eq!(parse("(*,").unwrap_err().offset(), 3);
    }
}
