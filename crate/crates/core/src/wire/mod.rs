//! Bit-exact wire codecs between [`CanonicalMessage`] and the three
//! supported protocols.
//!
//! Normative grammars (every byte the encoders emit follows these):
//!
//! - **SOAP request** — `<?xml version="1.0" encoding="UTF-8"?>` then
//!   `<Envelope><Header><MessageId>..</MessageId><Session>..</Session>`
//!   `<Source>..</Source><Destination>..</Destination><Operation>..</Operation>`
//!   `</Header><Body><Param name=".." type="..">..</Param>..</Body></Envelope>`,
//!   with `Session`/`Destination` omitted when absent, fixed element order,
//!   no namespaces; transported as HTTP POST `/esb`, `Content-Type: text/xml`.
//! - **SOAP response** — `<Envelope><Header><CorrelationId>..</CorrelationId>`
//!   `<Status>ok|fault</Status></Header><Body>` then `<Result name=".."
//!   type="..">..</Result>` or `<Fault code="..">..</Fault>`.
//! - **REST request** — `GET /svc/<op>?<name>=<value>&..` when every
//!   parameter is int/float/bool/string, otherwise `POST /svc/<op>` with the
//!   same pairs as the body; values percent-encoded; correlation id in the
//!   `X-Message-Id` header.
//! - **REST response** — HTTP 200 `text/plain`, lines `status=ok` +
//!   `<name>:<type>=<value>`, or `status=fault` + `code=<CODE>` +
//!   `message=<text>`; LF endings; correlation id echoed in `X-Message-Id`.
//! - **SOCK request** — one line `INVOKE <id> <op> <name>:<type>=<value> ..\n`
//!   over TCP, one request per connection round.
//! - **SOCK response** — `OK <id> <name>:<type>=<value>\n` or
//!   `ERR <id> <CODE> <message>\n`.

pub mod http;
mod rest;
mod soap;
mod sock;

pub use soap::xml_validate;

use crate::fault::Fault;
use crate::message::CanonicalMessage;
use crate::value::TypeTag;
use http::{RawRequest, RawResponse};
use std::fmt;

/// Parameter name/type pairs, required to decode REST requests (the REST
/// request grammar carries no type tags — the destination's published
/// signature supplies them).
pub type ParamTypes = [(String, TypeTag)];

/// The three wire protocols the bus speaks. Closed enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProtocolKind {
    Soap,
    Rest,
    Sock,
}

impl ProtocolKind {
    pub const ALL: [ProtocolKind; 3] = [ProtocolKind::Soap, ProtocolKind::Rest, ProtocolKind::Sock];

    pub fn as_str(&self) -> &'static str {
        match self {
            ProtocolKind::Soap => "SOAP",
            ProtocolKind::Rest => "REST",
            ProtocolKind::Sock => "SOCK",
        }
    }

    pub fn parse(s: &str) -> Result<ProtocolKind, Fault> {
        Self::ALL
            .iter()
            .copied()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Fault::bad_params(format!("unknown protocol {s:?}")))
    }
}

impl fmt::Display for ProtocolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Request,
    Response,
}

/// Transport metadata accompanying the payload bytes: HTTP envelope for
/// SOAP/REST, nothing for SOCK.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Transport {
    HttpRequest { method: String, target: String, headers: Vec<(String, String)> },
    HttpResponse { status: u16, headers: Vec<(String, String)> },
    Tcp,
}

/// One protocol-specific message as it travels on the wire. For HTTP
/// protocols `bytes` is the body; for SOCK it is the full LF-terminated
/// line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WireDocument {
    pub protocol: ProtocolKind,
    pub direction: Direction,
    pub transport: Transport,
    pub bytes: Vec<u8>,
}

impl WireDocument {
    pub fn header(&self, name: &str) -> Option<&str> {
        match &self.transport {
            Transport::HttpRequest { headers, .. } | Transport::HttpResponse { headers, .. } => {
                http::header(headers, name)
            }
            Transport::Tcp => None,
        }
    }

    /// Reassembles the full HTTP request this document represents.
    /// Returns `None` for SOCK documents and HTTP responses.
    pub fn to_raw_request(&self) -> Option<RawRequest> {
        match &self.transport {
            Transport::HttpRequest { method, target, headers } => Some(RawRequest {
                method: method.clone(),
                target: target.clone(),
                headers: headers.clone(),
                body: self.bytes.clone(),
            }),
            _ => None,
        }
    }

    /// Reassembles the full HTTP response this document represents.
    pub fn to_raw_response(&self) -> Option<RawResponse> {
        match &self.transport {
            Transport::HttpResponse { status, headers } => Some(RawResponse {
                status: *status,
                reason: "OK".to_string(),
                headers: headers.clone(),
                body: self.bytes.clone(),
            }),
            _ => None,
        }
    }

    pub fn from_raw_request(protocol: ProtocolKind, raw: RawRequest) -> WireDocument {
        WireDocument {
            protocol,
            direction: Direction::Request,
            transport: Transport::HttpRequest {
                method: raw.method,
                target: raw.target,
                headers: raw.headers,
            },
            bytes: raw.body,
        }
    }

    pub fn from_raw_response(protocol: ProtocolKind, raw: RawResponse) -> WireDocument {
        WireDocument {
            protocol,
            direction: Direction::Response,
            transport: Transport::HttpResponse { status: raw.status, headers: raw.headers },
            bytes: raw.body,
        }
    }

    /// Wraps one SOCK line (must already end with LF).
    pub fn sock_line(direction: Direction, line: Vec<u8>) -> WireDocument {
        WireDocument { protocol: ProtocolKind::Sock, direction, transport: Transport::Tcp, bytes: line }
    }
}

pub fn soap_encode(msg: &CanonicalMessage) -> WireDocument {
    soap::encode(msg)
}

pub fn soap_decode(doc: &WireDocument) -> Result<CanonicalMessage, Fault> {
    check_protocol(doc, ProtocolKind::Soap)?;
    soap::decode(doc)
}

pub fn rest_encode(msg: &CanonicalMessage) -> WireDocument {
    rest::encode(msg)
}

/// Decodes a REST document. `request_types` is required when `doc` is a
/// request; responses carry their type tags inline.
pub fn rest_decode(
    doc: &WireDocument,
    request_types: Option<&ParamTypes>,
) -> Result<CanonicalMessage, Fault> {
    check_protocol(doc, ProtocolKind::Rest)?;
    rest::decode(doc, request_types)
}

pub fn sock_encode(msg: &CanonicalMessage) -> WireDocument {
    sock::encode(msg)
}

pub fn sock_decode(doc: &WireDocument) -> Result<CanonicalMessage, Fault> {
    check_protocol(doc, ProtocolKind::Sock)?;
    sock::decode(doc)
}

/// Encodes a canonical message under any protocol. Total: every canonical
/// message has a representation under every protocol (fields a protocol
/// cannot express are dropped, see [`translate`]).
pub fn encode(protocol: ProtocolKind, msg: &CanonicalMessage) -> WireDocument {
    match protocol {
        ProtocolKind::Soap => soap_encode(msg),
        ProtocolKind::Rest => rest_encode(msg),
        ProtocolKind::Sock => sock_encode(msg),
    }
}

/// Decodes a wire document under its own protocol.
pub fn decode(
    doc: &WireDocument,
    request_types: Option<&ParamTypes>,
) -> Result<CanonicalMessage, Fault> {
    match doc.protocol {
        ProtocolKind::Soap => soap_decode(doc),
        ProtocolKind::Rest => rest_decode(doc, request_types),
        ProtocolKind::Sock => sock_decode(doc),
    }
}

/// Re-encodes a wire document under another protocol:
/// `decode(from) ∘ encode(to)`. Correlation id, operation, parameter
/// names, tags, and values are preserved exactly; session, source, and
/// destination survive only between protocols that can express them
/// (SOAP→SOAP).
pub fn translate(
    doc: &WireDocument,
    to: ProtocolKind,
    request_types: Option<&ParamTypes>,
) -> Result<WireDocument, Fault> {
    let msg = decode(doc, request_types)?;
    Ok(encode(to, &msg))
}

fn check_protocol(doc: &WireDocument, want: ProtocolKind) -> Result<(), Fault> {
    if doc.protocol != want {
        return Err(Fault::bad_params(format!(
            "cannot decode a {} document as {want}",
            doc.protocol
        )));
    }
    Ok(())
}
