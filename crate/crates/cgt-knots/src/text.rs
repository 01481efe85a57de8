//! Character cursor shared by the text grammars.

use crate::error::Error;

pub struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    ix: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor {
            chars: src.char_indices().collect(),
            ix: 0,
            src,
        }
    }

    pub fn pos(&self) -> usize {
        self.chars.get(self.ix).map_or(self.src.len(), |c| c.0)
    }

    pub fn peek(&self) -> Option<char> {
        self.chars.get(self.ix).map(|c| c.1)
    }

    pub fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.ix += 1;
        }
        c
    }

    pub fn at_end(&self) -> bool {
        self.ix >= self.chars.len()
    }

    pub fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.ix += 1;
        }
    }

    pub fn eat(&mut self, ch: char) -> bool {
        if self.peek() == Some(ch) {
            self.ix += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, ch: char) -> Result<(), Error> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(self.error(format!("expected {ch:?}")))
        }
    }

    pub fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if !f(c) {
                break;
            }
            out.push(c);
            self.ix += 1;
        }
        out
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.pos(), message)
    }
}
