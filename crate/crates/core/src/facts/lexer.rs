//! Line-aware tokenizer for the pragmatic Java subset.
//!
//! Comments and string/char literals are consumed as units so keywords
//! inside them can never be misread as statements. Numeric literals cover
//! decimal, hex, binary, underscores, exponents, and type suffixes.

/// Token category. Keywords are ordinary `Ident` tokens; callers compare
/// lexemes where keyword-ness matters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Ident,
    Number,
    Str,
    CharLit,
    Punct,
}

/// One lexical token with its 1-based source line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub line: usize,
}

impl Token {
    pub fn is(&self, text: &str) -> bool {
        self.text == text
    }
}

/// Multi-character operators, longest first within each length class.
const THREE_CHAR_OPS: &[&str] = &[">>>", "<<=", ">>=", "..."];
const TWO_CHAR_OPS: &[&str] = &[
    "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=", "-=", "*=", "/=", "%=", "&=", "|=",
    "^=", "<<", ">>", "->", "::",
];

/// Tokenizes Java source text. Never fails: unexpected bytes become
/// single-character punct tokens, which downstream scanning tolerates.
pub fn tokenize(text: &str) -> Vec<Token> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    let mut line = 1;

    while i < chars.len() {
        let c = chars[i];

        if c == '\n' {
            line += 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }

        // Line comment.
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }

        // Block comment (may span lines).
        if c == '/' && chars.get(i + 1) == Some(&'*') {
            i += 2;
            while i < chars.len() {
                if chars[i] == '\n' {
                    line += 1;
                } else if chars[i] == '*' && chars.get(i + 1) == Some(&'/') {
                    i += 2;
                    break;
                }
                i += 1;
            }
            continue;
        }

        // String literal with escapes.
        if c == '"' {
            let start_line = line;
            let mut lit = String::from("\"");
            i += 1;
            while i < chars.len() {
                let ch = chars[i];
                if ch == '\\' && i + 1 < chars.len() {
                    lit.push(ch);
                    lit.push(chars[i + 1]);
                    i += 2;
                    continue;
                }
                if ch == '\n' {
                    // Unterminated string: stop at end of line.
                    break;
                }
                lit.push(ch);
                i += 1;
                if ch == '"' {
                    break;
                }
            }
            tokens.push(Token { kind: TokenKind::Str, text: lit, line: start_line });
            continue;
        }

        // Char literal.
        if c == '\'' {
            let start_line = line;
            let mut lit = String::from("'");
            i += 1;
            while i < chars.len() {
                let ch = chars[i];
                if ch == '\\' && i + 1 < chars.len() {
                    lit.push(ch);
                    lit.push(chars[i + 1]);
                    i += 2;
                    continue;
                }
                if ch == '\n' {
                    break;
                }
                lit.push(ch);
                i += 1;
                if ch == '\'' {
                    break;
                }
            }
            tokens.push(Token { kind: TokenKind::CharLit, text: lit, line: start_line });
            continue;
        }

        // Numeric literal: digit start, or `.5` style.
        if c.is_ascii_digit()
            || (c == '.' && chars.get(i + 1).is_some_and(|n| n.is_ascii_digit()))
        {
            let start = i;
            i += 1;
            while i < chars.len() {
                let ch = chars[i];
                if ch.is_ascii_alphanumeric() || ch == '_' || ch == '.' {
                    i += 1;
                } else if (ch == '+' || ch == '-')
                    && matches!(chars[i - 1], 'e' | 'E' | 'p' | 'P')
                {
                    // Exponent sign inside `1.5e-3` / hex float `0x1p-2`.
                    i += 1;
                } else {
                    break;
                }
            }
            tokens.push(Token {
                kind: TokenKind::Number,
                text: chars[start..i].iter().collect(),
                line,
            });
            continue;
        }

        // Identifier or keyword.
        if c.is_alphabetic() || c == '_' || c == '$' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '$')
            {
                i += 1;
            }
            tokens.push(Token {
                kind: TokenKind::Ident,
                text: chars[start..i].iter().collect(),
                line,
            });
            continue;
        }

        // Operators, longest match first.
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        let mut matched = None;
        for op in THREE_CHAR_OPS {
            if rest.starts_with(op) {
                matched = Some(*op);
                break;
            }
        }
        if matched.is_none() {
            for op in TWO_CHAR_OPS {
                if rest.starts_with(op) {
                    matched = Some(*op);
                    break;
                }
            }
        }
        if let Some(op) = matched {
            tokens.push(Token { kind: TokenKind::Punct, text: op.to_string(), line });
            i += op.chars().count();
            continue;
        }

        tokens.push(Token { kind: TokenKind::Punct, text: c.to_string(), line });
        i += 1;
    }

    tokens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(src: &str) -> Vec<String> {
        tokenize(src).into_iter().map(|t| t.text).collect()
    }

    #[test]
    fn splits_idents_numbers_and_punct() {
        assert_eq!(
            texts("assertEquals(5, x);"),
            vec!["assertEquals", "(", "5", ",", "x", ")", ";"]
        );
    }

    #[test]
    fn keywords_inside_strings_are_literals() {
        let toks = tokenize("String s = \"if (x) { while }\";");
        assert_eq!(toks[3].kind, TokenKind::Str);
        assert!(!toks.iter().any(|t| t.kind == TokenKind::Ident && t.is("while")));
    }

    #[test]
    fn string_escapes_do_not_end_the_literal() {
        let toks = tokenize(r#"a("quote \" inside", b)"#);
        assert_eq!(toks[2].text, r#""quote \" inside""#);
        assert_eq!(toks[4].text, "b");
    }

    #[test]
    fn comments_are_skipped_but_lines_still_count() {
        let src = "foo();\n// if (x) skip\n/* while\n for */\nbar();";
        let toks = tokenize(src);
        assert_eq!(toks.iter().filter(|t| t.kind == TokenKind::Ident).count(), 2);
        let bar = toks.iter().find(|t| t.is("bar")).unwrap();
        assert_eq!(bar.line, 5);
    }

    #[test]
    fn numeric_literal_shapes() {
        for lit in ["123", "1_000_000", "0x1F", "0b1010", "2.5f", "1.5e-3", "2000L", ".5"] {
            let toks = tokenize(lit);
            assert_eq!(toks.len(), 1, "{lit}");
            assert_eq!(toks[0].kind, TokenKind::Number, "{lit}");
            assert_eq!(toks[0].text, lit, "{lit}");
        }
    }

    #[test]
    fn multi_char_operators_are_single_tokens() {
        assert_eq!(texts("a != b && c == d"), vec!["a", "!=", "b", "&&", "c", "==", "d"]);
        assert_eq!(texts("x -> x + 1"), vec!["x", "->", "x", "+", "1"]);
    }

    #[test]
    fn char_literals_hold_escapes() {
        let toks = tokenize(r"char c = '\n';");
        assert_eq!(toks[3].kind, TokenKind::CharLit);
        assert_eq!(toks[3].text, r"'\n'");
    }

    #[test]
    fn line_numbers_are_one_based_and_accurate() {
        let toks = tokenize("a\nb\n\nc");
        let lines: Vec<usize> = toks.iter().map(|t| t.line).collect();
        assert_eq!(lines, vec![1, 2, 4]);
    }
}
