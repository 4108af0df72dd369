//! Minimal HTTP/1.1 framing: `Content-Length` bodies only, no chunked
//! encoding, no compression, one exchange per connection. Both sides of the
//! bus speak exactly this subset, and the encoders emit a fixed header set
//! in a fixed order so wire captures are byte-stable.

use std::io::{self, BufRead, Read, Write};

/// Upper bound on the request/status line plus headers.
pub const MAX_HEAD_BYTES: usize = 16 * 1024;
/// Upper bound on a framed body.
pub const MAX_BODY_BYTES: usize = 16 * 1024 * 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRequest {
    pub method: String,
    /// Request target as it appears on the request line (path plus
    /// optional query).
    pub target: String,
    pub headers: Vec<(String, String)>,
    pub body: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawResponse {
    pub status: u16,
    pub reason: String,
    pub headers: Vec<(String, String)>,
    pub body: Vec<u8>,
}

/// Case-insensitive header lookup.
pub fn header<'a>(headers: &'a [(String, String)], name: &str) -> Option<&'a str> {
    headers
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, v)| v.as_str())
}

impl RawRequest {
    pub fn render(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.body.len() + 128);
        out.extend_from_slice(format!("{} {} HTTP/1.1\r\n", self.method, self.target).as_bytes());
        for (name, value) in &self.headers {
            out.extend_from_slice(format!("{name}: {value}\r\n").as_bytes());
        }
        out.extend_from_slice(b"\r\n");
        out.extend_from_slice(&self.body);
        out
    }

    pub fn write_to(&self, w: &mut impl Write) -> io::Result<()> {
        w.write_all(&self.render())?;
        w.flush()
    }

    pub fn read_from(r: &mut impl BufRead) -> io::Result<RawRequest> {
        let line = read_line(r)?;
        let mut parts = line.split(' ');
        let method = parts.next().unwrap_or_default().to_string();
        let target = parts
            .next()
            .ok_or_else(|| malformed("missing request target"))?
            .to_string();
        let version = parts.next().ok_or_else(|| malformed("missing HTTP version"))?;
        if !version.starts_with("HTTP/1.") || parts.next().is_some() {
            return Err(malformed("bad request line"));
        }
        if method.is_empty() || method.bytes().any(|b| !b.is_ascii_uppercase()) {
            return Err(malformed("bad method"));
        }
        let headers = read_headers(r)?;
        let body = read_body(r, &headers)?;
        Ok(RawRequest { method, target, headers, body })
    }
}

impl RawResponse {
    /// Builds a response with the framing headers filled in.
    pub fn simple(status: u16, reason: &str, content_type: &str, body: Vec<u8>) -> RawResponse {
        RawResponse {
            status,
            reason: reason.to_string(),
            headers: vec![
                ("Content-Type".to_string(), content_type.to_string()),
                ("Content-Length".to_string(), body.len().to_string()),
            ],
            body,
        }
    }

    pub fn render(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.body.len() + 128);
        out.extend_from_slice(format!("HTTP/1.1 {} {}\r\n", self.status, self.reason).as_bytes());
        for (name, value) in &self.headers {
            out.extend_from_slice(format!("{name}: {value}\r\n").as_bytes());
        }
        out.extend_from_slice(b"\r\n");
        out.extend_from_slice(&self.body);
        out
    }

    pub fn write_to(&self, w: &mut impl Write) -> io::Result<()> {
        w.write_all(&self.render())?;
        w.flush()
    }

    pub fn read_from(r: &mut impl BufRead) -> io::Result<RawResponse> {
        let line = read_line(r)?;
        let rest = line
            .strip_prefix("HTTP/1.1 ")
            .or_else(|| line.strip_prefix("HTTP/1.0 "))
            .ok_or_else(|| malformed("bad status line"))?;
        let (code, reason) = rest.split_once(' ').unwrap_or((rest, ""));
        let status: u16 = code.parse().map_err(|_| malformed("bad status code"))?;
        let headers = read_headers(r)?;
        let body = read_body(r, &headers)?;
        Ok(RawResponse { status, reason: reason.to_string(), headers, body })
    }
}

fn malformed(msg: &str) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, msg.to_string())
}

fn read_line(r: &mut impl BufRead) -> io::Result<String> {
    let mut buf = Vec::new();
    let mut byte = [0u8; 1];
    loop {
        let n = r.read(&mut byte)?;
        if n == 0 {
            return Err(io::Error::new(io::ErrorKind::UnexpectedEof, "connection closed"));
        }
        if byte[0] == b'\n' {
            break;
        }
        buf.push(byte[0]);
        if buf.len() > MAX_HEAD_BYTES {
            return Err(malformed("header line too long"));
        }
    }
    if buf.last() == Some(&b'\r') {
        buf.pop();
    }
    String::from_utf8(buf).map_err(|_| malformed("header line is not valid UTF-8"))
}

fn read_headers(r: &mut impl BufRead) -> io::Result<Vec<(String, String)>> {
    let mut headers = Vec::new();
    let mut total = 0usize;
    loop {
        let line = read_line(r)?;
        if line.is_empty() {
            return Ok(headers);
        }
        total += line.len();
        if total > MAX_HEAD_BYTES {
            return Err(malformed("header block too large"));
        }
        let (name, value) = line.split_once(':').ok_or_else(|| malformed("bad header line"))?;
        headers.push((name.trim().to_string(), value.trim().to_string()));
    }
}

fn read_body(r: &mut impl BufRead, headers: &[(String, String)]) -> io::Result<Vec<u8>> {
    if header(headers, "Transfer-Encoding").is_some() {
        return Err(malformed("chunked transfer encoding is not supported"));
    }
    let len = match header(headers, "Content-Length") {
        None => return Ok(Vec::new()),
        Some(v) => v.parse::<usize>().map_err(|_| malformed("bad Content-Length"))?,
    };
    if len > MAX_BODY_BYTES {
        return Err(malformed("body too large"));
    }
    let mut body = vec![0u8; len];
    r.read_exact(&mut body)?;
    Ok(body)
}
