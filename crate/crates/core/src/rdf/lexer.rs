//! Tokenizer shared by the N-Triples, N-Quads, Turtle and TriG parsers.

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    IriRef(String),
    PName { prefix: String, local: String },
    Blank(String),
    Str(String),
    LangTag(String),
    DoubleCaret,
    Integer(String),
    Decimal(String),
    Double(String),
    True,
    False,
    A,
    Dot,
    Semicolon,
    Comma,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    LParen,
    QuotedTripleOpen,
    /// `@prefix` (true) or `PREFIX` (false)
    Prefix(bool),
    /// `@base` (true) or `BASE` (false)
    Base(bool),
    Graph,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::IriRef(i) => format!("<{i}>"),
            Tok::PName { prefix, local } => format!("{prefix}:{local}"),
            Tok::Blank(b) => format!("_:{b}"),
            Tok::Str(_) => "string literal".into(),
            Tok::LangTag(t) => format!("@{t}"),
            Tok::DoubleCaret => "'^^'".into(),
            Tok::Integer(n) | Tok::Decimal(n) | Tok::Double(n) => format!("number {n}"),
            Tok::True => "'true'".into(),
            Tok::False => "'false'".into(),
            Tok::A => "'a'".into(),
            Tok::Dot => "'.'".into(),
            Tok::Semicolon => "';'".into(),
            Tok::Comma => "','".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::LBrace => "'{'".into(),
            Tok::RBrace => "'}'".into(),
            Tok::LParen => "'('".into(),
            Tok::QuotedTripleOpen => "'<<'".into(),
            Tok::Prefix(_) => "prefix directive".into(),
            Tok::Base(_) => "base directive".into(),
            Tok::Graph => "'GRAPH'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug)]
pub(crate) struct LexError {
    pub pos: Pos,
    pub message: String,
}

pub(crate) struct Lexer<'a> {
    chars: Vec<char>,
    idx: usize,
    line: usize,
    column: usize,
    prev_was_string: bool,
    _src: std::marker::PhantomData<&'a str>,
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | ':' | '%' | '\u{B7}')
}

impl<'a> Lexer<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().collect(),
            idx: 0,
            line: 1,
            column: 1,
            prev_was_string: false,
            _src: std::marker::PhantomData,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.idx + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.idx).copied()?;
        self.idx += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            column: self.column,
        }
    }

    fn err<T>(&self, pos: Pos, message: impl Into<String>) -> Result<T, LexError> {
        Err(LexError {
            pos,
            message: message.into(),
        })
    }

    fn skip_ws_and_comments(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    pub(crate) fn next_token(&mut self) -> Result<(Tok, Pos), LexError> {
        self.skip_ws_and_comments();
        let pos = self.pos();
        let after_string = std::mem::replace(&mut self.prev_was_string, false);
        let Some(c) = self.peek() else {
            return Ok((Tok::Eof, pos));
        };
        let tok = match c {
            '<' if self.peek_at(1) == Some('<') => {
                self.bump();
                self.bump();
                Tok::QuotedTripleOpen
            }
            '<' => Tok::IriRef(self.lex_iri(pos)?),
            '"' | '\'' => {
                let s = self.lex_string(pos)?;
                self.prev_was_string = true;
                Tok::Str(s)
            }
            '@' => {
                self.bump();
                let mut word = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == '-' {
                        word.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                if word.is_empty() {
                    return self.err(pos, "expected a language tag or directive after '@'");
                }
                if after_string {
                    Tok::LangTag(word)
                } else if word == "prefix" {
                    Tok::Prefix(true)
                } else if word == "base" {
                    Tok::Base(true)
                } else {
                    return self.err(pos, format!("unknown directive @{word}"));
                }
            }
            '^' => {
                self.bump();
                if self.peek() != Some('^') {
                    return self.err(pos, "expected '^^'");
                }
                self.bump();
                Tok::DoubleCaret
            }
            '_' if self.peek_at(1) == Some(':') => {
                self.bump();
                self.bump();
                let mut label = String::new();
                while let Some(c) = self.peek() {
                    if c.is_alphanumeric() || matches!(c, '_' | '-' | '.') {
                        label.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                self.unread_trailing_dots(&mut label);
                if label.is_empty() {
                    return self.err(pos, "empty blank node label");
                }
                Tok::Blank(label)
            }
            '.' if !self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) => {
                self.bump();
                Tok::Dot
            }
            ';' => {
                self.bump();
                Tok::Semicolon
            }
            ',' => {
                self.bump();
                Tok::Comma
            }
            '[' => {
                self.bump();
                Tok::LBracket
            }
            ']' => {
                self.bump();
                Tok::RBracket
            }
            '{' => {
                self.bump();
                Tok::LBrace
            }
            '}' => {
                self.bump();
                Tok::RBrace
            }
            '(' => {
                self.bump();
                Tok::LParen
            }
            c if c.is_ascii_digit() || matches!(c, '+' | '-' | '.') => self.lex_number(pos)?,
            c if is_name_char(c) => self.lex_word(pos)?,
            c => return self.err(pos, format!("unexpected character {c:?}")),
        };
        Ok((tok, pos))
    }

    /// A trailing '.' belongs to the statement, not to the name.
    fn unread_trailing_dots(&mut self, word: &mut String) {
        while word.ends_with('.') {
            word.pop();
            self.idx -= 1;
            self.column -= 1;
        }
    }

    fn lex_word(&mut self, pos: Pos) -> Result<Tok, LexError> {
        let mut word = String::new();
        while let Some(c) = self.peek() {
            if c == '\\' {
                // escaped punctuation in a prefixed local name
                word.push(c);
                self.bump();
                match self.bump() {
                    Some(e) => word.push(e),
                    None => return self.err(pos, "dangling escape in name"),
                }
            } else if is_name_char(c) {
                word.push(c);
                self.bump();
            } else {
                break;
            }
        }
        self.unread_trailing_dots(&mut word);
        match word.as_str() {
            "a" => return Ok(Tok::A),
            "true" => return Ok(Tok::True),
            "false" => return Ok(Tok::False),
            _ => {}
        }
        if word.eq_ignore_ascii_case("PREFIX") {
            return Ok(Tok::Prefix(false));
        }
        if word.eq_ignore_ascii_case("BASE") {
            return Ok(Tok::Base(false));
        }
        if word.eq_ignore_ascii_case("GRAPH") {
            return Ok(Tok::Graph);
        }
        let Some(colon) = word.find(':') else {
            return self.err(pos, format!("unexpected bare word {word:?}"));
        };
        let prefix = word[..colon].to_owned();
        if prefix.starts_with(['.', '-', '_']) || prefix.chars().next().is_some_and(|c| c.is_ascii_digit()) {
            return self.err(pos, format!("invalid prefix name {prefix:?}"));
        }
        let raw_local = &word[colon + 1..];
        let mut local = String::with_capacity(raw_local.len());
        let mut chars = raw_local.chars();
        while let Some(c) = chars.next() {
            if c == '\\' {
                if let Some(e) = chars.next() {
                    local.push(e);
                }
            } else {
                local.push(c);
            }
        }
        Ok(Tok::PName { prefix, local })
    }

    fn lex_number(&mut self, pos: Pos) -> Result<Tok, LexError> {
        let mut s = String::new();
        if let Some(c @ ('+' | '-')) = self.peek() {
            s.push(c);
            self.bump();
        }
        let mut int_digits = 0;
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            s.push(c);
            self.bump();
            int_digits += 1;
        }
        let mut frac_digits = 0;
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            s.push('.');
            self.bump();
            while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
                s.push(c);
                self.bump();
                frac_digits += 1;
            }
        }
        if int_digits + frac_digits == 0 {
            return self.err(pos, "malformed number");
        }
        if let Some(e @ ('e' | 'E')) = self.peek() {
            s.push(e);
            self.bump();
            if let Some(c @ ('+' | '-')) = self.peek() {
                s.push(c);
                self.bump();
            }
            let mut exp_digits = 0;
            while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
                s.push(c);
                self.bump();
                exp_digits += 1;
            }
            if exp_digits == 0 {
                return self.err(pos, "malformed exponent");
            }
            return Ok(Tok::Double(s));
        }
        Ok(if frac_digits > 0 || s.contains('.') {
            Tok::Decimal(s)
        } else {
            Tok::Integer(s)
        })
    }

    fn lex_iri(&mut self, pos: Pos) -> Result<String, LexError> {
        self.bump(); // <
        let mut iri = String::new();
        loop {
            match self.bump() {
                None => return self.err(pos, "unterminated IRI"),
                Some('>') => break,
                Some('\\') => iri.push(self.lex_uchar(pos)?),
                Some(c) if c <= ' ' || matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`') => {
                    return self.err(pos, format!("character {c:?} is not allowed in an IRI"));
                }
                Some(c) => iri.push(c),
            }
        }
        Ok(iri)
    }

    fn lex_uchar(&mut self, pos: Pos) -> Result<char, LexError> {
        let width = match self.bump() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return self.err(pos, "invalid escape sequence"),
        };
        let mut hex = String::new();
        for _ in 0..width {
            match self.bump() {
                Some(c) if c.is_ascii_hexdigit() => hex.push(c),
                _ => return self.err(pos, "invalid unicode escape"),
            }
        }
        u32::from_str_radix(&hex, 16)
            .ok()
            .and_then(char::from_u32)
            .map_or_else(|| self.err(pos, "invalid unicode code point"), Ok)
    }

    fn lex_string(&mut self, pos: Pos) -> Result<String, LexError> {
        let quote = self.bump().expect("caller checked quote");
        let long = self.peek() == Some(quote) && self.peek_at(1) == Some(quote);
        if long {
            self.bump();
            self.bump();
        }
        let mut s = String::new();
        loop {
            let Some(c) = self.bump() else {
                return self.err(pos, "unterminated string literal");
            };
            if c == quote {
                if !long {
                    break;
                }
                if self.peek() == Some(quote) && self.peek_at(1) == Some(quote) {
                    self.bump();
                    self.bump();
                    // a long string may end with up to two extra quotes
                    while self.peek() == Some(quote) {
                        s.push(quote);
                        self.bump();
                    }
                    break;
                }
                s.push(c);
            } else if c == '\\' {
                let esc = match self.peek() {
                    Some('t') => '\t',
                    Some('b') => '\u{08}',
                    Some('n') => '\n',
                    Some('r') => '\r',
                    Some('f') => '\u{0C}',
                    Some('"') => '"',
                    Some('\'') => '\'',
                    Some('\\') => '\\',
                    Some('u' | 'U') => {
                        s.push(self.lex_uchar(pos)?);
                        continue;
                    }
                    _ => return self.err(self.pos(), "invalid escape sequence in string"),
                };
                self.bump();
                s.push(esc);
            } else if !long && (c == '\n' || c == '\r') {
                return self.err(pos, "line break in short string literal");
            } else {
                s.push(c);
            }
        }
        Ok(s)
    }
}
