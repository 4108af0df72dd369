//! Minimal XML subset shared by the SOAP envelope and descriptor grammars:
//! an optional prolog, elements with double-quoted attributes, text content
//! with the five named entities. No namespaces, comments, CDATA, or
//! processing instructions — the wire grammars use none of them, and
//! keeping the parser closed makes every malformed input an error instead
//! of a silent reinterpretation.

use std::fmt;
use thiserror::Error;

/// Parse failure with the byte offset where the input stopped making sense.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed XML at byte {offset}: {message}")]
pub struct XmlError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    pub name: String,
    pub attrs: Vec<(String, String)>,
    pub children: Vec<Node>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Element(Element),
    Text(String),
}

impl Element {
    pub fn attr(&self, name: &str) -> Option<&str> {
        self.attrs.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_str())
    }

    /// Child elements in document order.
    pub fn elements(&self) -> impl Iterator<Item = &Element> {
        self.children.iter().filter_map(|n| match n {
            Node::Element(e) => Some(e),
            Node::Text(_) => None,
        })
    }

    /// True if any text child contains non-whitespace. Container elements
    /// in the wire grammars never carry text of their own.
    pub fn has_stray_text(&self) -> bool {
        self.children.iter().any(|n| match n {
            Node::Text(t) => !t.chars().all(|c| c.is_ascii_whitespace()),
            Node::Element(_) => false,
        })
    }

    /// Concatenated text content, or `None` if the element has child
    /// elements (i.e. it is not a leaf).
    pub fn leaf_text(&self) -> Option<String> {
        let mut out = String::new();
        for child in &self.children {
            match child {
                Node::Text(t) => out.push_str(t),
                Node::Element(_) => return None,
            }
        }
        Some(out)
    }
}

/// Escapes text content: `&`, `<`, `>`.
pub fn escape_text(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            _ => out.push(c),
        }
    }
    out
}

/// Escapes attribute values: text escapes plus `"`.
pub fn escape_attr(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
    out
}

const MAX_DEPTH: usize = 64;

/// Parses a whole document: optional `<?xml ...?>` prolog, one root
/// element, nothing but whitespace around them.
pub fn parse_document(bytes: &[u8]) -> Result<Element, XmlError> {
    let text = std::str::from_utf8(bytes).map_err(|e| XmlError {
        offset: e.valid_up_to(),
        message: "document is not valid UTF-8".into(),
    })?;
    let mut p = Parser { text, pos: 0 };
    p.skip_whitespace();
    if p.rest().starts_with("<?xml") {
        match p.rest().find("?>") {
            Some(end) => p.pos += end + 2,
            None => return Err(p.error("unterminated XML prolog")),
        }
        p.skip_whitespace();
    }
    let root = p.parse_element(0)?;
    p.skip_whitespace();
    if p.pos != p.text.len() {
        return Err(p.error("trailing content after root element"));
    }
    Ok(root)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn error(&self, message: impl fmt::Display) -> XmlError {
        XmlError { offset: self.pos, message: message.to_string() }
    }

    fn skip_whitespace(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), XmlError> {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(self.error(format!("expected {token:?}")))
        }
    }

    fn parse_name(&mut self) -> Result<String, XmlError> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.pos += 1,
            _ => return Err(self.error("expected a name")),
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(self.text[start..self.pos].to_string())
    }

    fn parse_entity(&mut self) -> Result<char, XmlError> {
        // Caller consumed '&'.
        let rest = self.rest();
        let semi = rest
            .char_indices()
            .take(8)
            .find(|(_, c)| *c == ';')
            .map(|(i, _)| i)
            .ok_or_else(|| self.error("unterminated entity reference"))?;
        let name = &rest[..semi];
        let c = match name {
            "amp" => '&',
            "lt" => '<',
            "gt" => '>',
            "quot" => '"',
            "apos" => '\'',
            _ => return Err(self.error(format!("unknown entity &{name};"))),
        };
        self.pos += semi + 1;
        Ok(c)
    }

    fn parse_attr_value(&mut self) -> Result<String, XmlError> {
        self.expect("\"")?;
        let mut out = String::new();
        loop {
            match self.peek() {
                None => return Err(self.error("unterminated attribute value")),
                Some('"') => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some('<') => return Err(self.error("raw '<' in attribute value")),
                Some('&') => {
                    self.pos += 1;
                    out.push(self.parse_entity()?);
                }
                Some(c) => {
                    out.push(c);
                    self.pos += c.len_utf8();
                }
            }
        }
    }

    fn parse_element(&mut self, depth: usize) -> Result<Element, XmlError> {
        if depth >= MAX_DEPTH {
            return Err(self.error("element nesting too deep"));
        }
        self.expect("<")?;
        let name = self.parse_name()?;
        let mut attrs: Vec<(String, String)> = Vec::new();
        loop {
            let had_space = {
                let before = self.pos;
                self.skip_whitespace();
                self.pos != before
            };
            match self.peek() {
                None => return Err(self.error("unterminated start tag")),
                Some('/') => {
                    self.pos += 1;
                    self.expect(">")?;
                    return Ok(Element { name, attrs, children: Vec::new() });
                }
                Some('>') => {
                    self.pos += 1;
                    break;
                }
                Some(_) => {
                    if !had_space {
                        return Err(self.error("expected whitespace before attribute"));
                    }
                    let attr_name = self.parse_name()?;
                    if attrs.iter().any(|(n, _)| *n == attr_name) {
                        return Err(self.error(format!("duplicate attribute {attr_name:?}")));
                    }
                    self.skip_whitespace();
                    self.expect("=")?;
                    self.skip_whitespace();
                    let value = self.parse_attr_value()?;
                    attrs.push((attr_name, value));
                }
            }
        }

        let mut children: Vec<Node> = Vec::new();
        let mut text = String::new();
        loop {
            match self.peek() {
                None => return Err(self.error(format!("unterminated element <{name}>"))),
                Some('<') => {
                    if !text.is_empty() {
                        children.push(Node::Text(std::mem::take(&mut text)));
                    }
                    if self.rest().starts_with("</") {
                        self.pos += 2;
                        let close = self.parse_name()?;
                        if close != name {
                            return Err(self.error(format!(
                                "mismatched end tag </{close}>, expected </{name}>"
                            )));
                        }
                        self.skip_whitespace();
                        self.expect(">")?;
                        return Ok(Element { name, attrs, children });
                    }
                    if self.rest().starts_with("<!") || self.rest().starts_with("<?") {
                        return Err(self.error("unsupported markup"));
                    }
                    children.push(Node::Element(self.parse_element(depth + 1)?));
                }
                Some('&') => {
                    self.pos += 1;
                    text.push(self.parse_entity()?);
                }
                Some(c) => {
                    text.push(c);
                    self.pos += c.len_utf8();
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested_elements_and_attrs() {
        let doc = br#"<A x="1"><B>hi</B><C/></A>"#;
        let root = parse_document(doc).unwrap();
        assert_eq!(root.name, "A");
        assert_eq!(root.attr("x"), Some("1"));
        let children: Vec<_> = root.elements().collect();
        assert_eq!(children.len(), 2);
        assert_eq!(children[0].leaf_text().unwrap(), "hi");
        assert_eq!(children[1].name, "C");
    }

    #[test]
    fn accepts_prolog_and_whitespace() {
        let doc = b"<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<A>  <B></B> </A>\n";
        let root = parse_document(doc).unwrap();
        assert!(!root.has_stray_text());
        assert_eq!(root.elements().count(), 1);
    }

    #[test]
    fn unescapes_entities() {
        let root = parse_document(br#"<A k="&quot;q&quot;">&amp;&lt;&gt;&apos;</A>"#).unwrap();
        assert_eq!(root.leaf_text().unwrap(), "&<>'");
        assert_eq!(root.attr("k"), Some("\"q\""));
    }

    #[test]
    fn escape_round_trip() {
        let raw = "a<b>&c\"d'e";
        let doc = format!("<A k=\"{}\">{}</A>", escape_attr(raw), escape_text(raw));
        let root = parse_document(doc.as_bytes()).unwrap();
        assert_eq!(root.leaf_text().unwrap(), raw);
        assert_eq!(root.attr("k"), Some(raw));
    }

    #[test]
    fn rejects_malformed_documents() {
        for doc in [
            &b"<A><B></A>"[..],
            b"<A>",
            b"<A attr=unquoted>x</A>",
            b"<A>&bogus;</A>",
            b"<A><!-- no comments --></A>",
            b"<A></A><B></B>",
            b"",
            b"plain text",
        ] {
            assert!(parse_document(doc).is_err(), "{:?}", String::from_utf8_lossy(doc));
        }
    }

    #[test]
    fn errors_carry_an_offset() {
        let err = parse_document(b"<A><B></A>").unwrap_err();
        assert!(err.offset > 0);
        assert!(err.to_string().contains("byte"));
    }

    #[test]
    fn rejects_invalid_utf8() {
        assert!(parse_document(&[b'<', b'A', 0xff, b'>']).is_err());
    }

    #[test]
    fn depth_limit_is_an_error_not_a_crash() {
        let mut doc = String::new();
        for _ in 0..100 {
            doc.push_str("<A>");
        }
        for _ in 0..100 {
            doc.push_str("</A>");
        }
        assert!(parse_document(doc.as_bytes()).is_err());
    }
}
