//! The protocol-neutral request/response model — the broker's lingua
//! franca. Every wire codec encodes and decodes these types.

use crate::descriptor::OperationSignature;
use crate::fault::Fault;
use crate::value::Value;
use std::collections::HashSet;
use std::fmt;

/// 128-bit message id, rendered on the wire as 32 lowercase hex characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MessageId([u8; 16]);

impl MessageId {
    /// All-zero id, used as the correlation id of fault responses to
    /// requests whose own id could not be recovered.
    pub const ZERO: MessageId = MessageId([0; 16]);

    pub fn from_bytes(bytes: [u8; 16]) -> MessageId {
        MessageId(bytes)
    }

    pub fn as_bytes(&self) -> &[u8; 16] {
        &self.0
    }

    pub fn parse(s: &str) -> Result<MessageId, Fault> {
        let bytes = s.as_bytes();
        if bytes.len() != 32 {
            return Err(Fault::bad_params("message id must be 32 lowercase hex characters"));
        }
        let mut out = [0u8; 16];
        for (i, chunk) in bytes.chunks_exact(2).enumerate() {
            let hi = hex_nibble(chunk[0])?;
            let lo = hex_nibble(chunk[1])?;
            out[i] = (hi << 4) | lo;
        }
        Ok(MessageId(out))
    }
}

fn hex_nibble(b: u8) -> Result<u8, Fault> {
    match b {
        b'0'..=b'9' => Ok(b - b'0'),
        b'a'..=b'f' => Ok(b - b'a' + 10),
        _ => Err(Fault::bad_params("message id must be 32 lowercase hex characters")),
    }
}

impl fmt::Display for MessageId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

/// Opaque session credential returned by bind and carried on every invoke.
/// Broker-issued tokens are 32 lowercase hex characters from a
/// cryptographically random source; the wire accepts any text and simply
/// fails authentication for tokens it never issued.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SessionToken(String);

impl SessionToken {
    pub fn new(token: impl Into<String>) -> SessionToken {
        SessionToken(token.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for SessionToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A remote operation invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalRequest {
    pub message_id: MessageId,
    /// Absent only for bind and other pre-session traffic.
    pub session: Option<SessionToken>,
    /// Client id of the sender. Protocols that cannot express it decode it
    /// as the empty string.
    pub source: String,
    /// Explicit destination service; absent means "route by operation
    /// name".
    pub destination: Option<String>,
    pub operation: String,
    /// Ordered named parameters; names are unique within a request.
    pub params: Vec<(String, Value)>,
}

impl CanonicalRequest {
    /// Checks the structural invariants: non-empty operation, unique
    /// parameter names.
    pub fn validate(&self) -> Result<(), Fault> {
        if self.operation.is_empty() {
            return Err(Fault::bad_params("operation must not be empty"));
        }
        let mut seen = HashSet::new();
        for (name, _) in &self.params {
            if !seen.insert(name.as_str()) {
                return Err(Fault::bad_params(format!("duplicate parameter {name:?}")));
            }
        }
        Ok(())
    }

    pub fn param(&self, name: &str) -> Option<&Value> {
        self.params.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }
}

/// Result side of a response: exactly one of a named result value or a
/// fault, matching the wire status.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Ok { name: String, value: Value },
    Fault(Fault),
}

impl Outcome {
    pub fn status_str(&self) -> &'static str {
        match self {
            Outcome::Ok { .. } => "ok",
            Outcome::Fault(_) => "fault",
        }
    }
}

/// A response correlated to a request by message id.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalResponse {
    pub correlation_id: MessageId,
    pub outcome: Outcome,
}

impl CanonicalResponse {
    pub fn ok(correlation_id: MessageId, name: impl Into<String>, value: Value) -> CanonicalResponse {
        CanonicalResponse {
            correlation_id,
            outcome: Outcome::Ok { name: name.into(), value },
        }
    }

    pub fn fault(correlation_id: MessageId, fault: Fault) -> CanonicalResponse {
        CanonicalResponse { correlation_id, outcome: Outcome::Fault(fault) }
    }

    pub fn fault_ref(&self) -> Option<&Fault> {
        match &self.outcome {
            Outcome::Fault(f) => Some(f),
            Outcome::Ok { .. } => None,
        }
    }

    pub fn result(&self) -> Option<(&str, &Value)> {
        match &self.outcome {
            Outcome::Ok { name, value } => Some((name, value)),
            Outcome::Fault(_) => None,
        }
    }
}

/// Either side of an exchange, as produced by the wire decoders.
#[derive(Debug, Clone, PartialEq)]
pub enum CanonicalMessage {
    Request(CanonicalRequest),
    Response(CanonicalResponse),
}

impl From<CanonicalRequest> for CanonicalMessage {
    fn from(r: CanonicalRequest) -> CanonicalMessage {
        CanonicalMessage::Request(r)
    }
}

impl From<CanonicalResponse> for CanonicalMessage {
    fn from(r: CanonicalResponse) -> CanonicalMessage {
        CanonicalMessage::Response(r)
    }
}

/// Checks a request against the registry's signature for its operation:
/// parameter names, order, and type tags must match exactly. The first
/// mismatching parameter is named in the fault message.
pub fn validate_against_signature(
    req: &CanonicalRequest,
    sig: &OperationSignature,
) -> Result<(), Fault> {
    for (i, (want_name, want_tag)) in sig.params.iter().enumerate() {
        match req.params.get(i) {
            None => {
                return Err(Fault::bad_params(format!("missing parameter {want_name:?}")));
            }
            Some((got_name, got_value)) => {
                if got_name != want_name {
                    return Err(Fault::bad_params(format!(
                        "expected parameter {want_name:?} at position {i}, got {got_name:?}"
                    )));
                }
                if got_value.tag() != *want_tag {
                    return Err(Fault::bad_params(format!(
                        "parameter {want_name:?} must be {want_tag}, got {}",
                        got_value.tag()
                    )));
                }
            }
        }
    }
    if let Some((extra, _)) = req.params.get(sig.params.len()) {
        return Err(Fault::bad_params(format!("unexpected parameter {extra:?}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::TypeTag;

    fn trajectory_sig() -> OperationSignature {
        OperationSignature {
            name: "Trajectory".into(),
            description: "test".into(),
            params: vec![
                ("velocity".into(), TypeTag::Float),
                ("gravity".into(), TypeTag::Float),
                ("range".into(), TypeTag::Float),
            ],
            returns: ("angle".into(), TypeTag::Float),
        }
    }

    fn req(params: Vec<(String, Value)>) -> CanonicalRequest {
        CanonicalRequest {
            message_id: MessageId::from_bytes([7; 16]),
            session: None,
            source: "alpha-01".into(),
            destination: None,
            operation: "Trajectory".into(),
            params,
        }
    }

    #[test]
    fn message_id_round_trips() {
        let id = MessageId::from_bytes([0xab; 16]);
        let s = id.to_string();
        assert_eq!(s.len(), 32);
        assert_eq!(MessageId::parse(&s).unwrap(), id);
    }

    #[test]
    fn message_id_rejects_uppercase_and_short_input() {
        assert!(MessageId::parse("AB").is_err());
        assert!(MessageId::parse(&"AB".repeat(16)).is_err());
        assert!(MessageId::parse(&"zz".repeat(16)).is_err());
    }

    #[test]
    fn matching_request_validates() {
        let r = req(vec![
            ("velocity".into(), Value::Float(45.0)),
            ("gravity".into(), Value::Float(9.8)),
            ("range".into(), Value::Float(97.77)),
        ]);
        assert!(validate_against_signature(&r, &trajectory_sig()).is_ok());
    }

    #[test]
    fn missing_parameter_is_named() {
        let r = req(vec![("velocity".into(), Value::Float(45.0))]);
        let err = validate_against_signature(&r, &trajectory_sig()).unwrap_err();
        assert!(err.message.contains("gravity"), "{}", err.message);
    }

    #[test]
    fn wrong_type_is_named() {
        let r = req(vec![
            ("velocity".into(), Value::str("45")),
            ("gravity".into(), Value::Float(9.8)),
            ("range".into(), Value::Float(97.77)),
        ]);
        let err = validate_against_signature(&r, &trajectory_sig()).unwrap_err();
        assert!(err.message.contains("velocity"), "{}", err.message);
    }

    #[test]
    fn extra_parameter_is_rejected() {
        let mut r = req(vec![
            ("velocity".into(), Value::Float(45.0)),
            ("gravity".into(), Value::Float(9.8)),
            ("range".into(), Value::Float(97.77)),
        ]);
        r.params.push(("windage".into(), Value::Float(1.0)));
        let err = validate_against_signature(&r, &trajectory_sig()).unwrap_err();
        assert!(err.message.contains("windage"), "{}", err.message);
    }

    #[test]
    fn duplicate_params_fail_request_validation() {
        let r = req(vec![
            ("velocity".into(), Value::Float(45.0)),
            ("velocity".into(), Value::Float(46.0)),
        ]);
        assert!(r.validate().is_err());
    }
}
