//! Structured errors mapped uniformly across all three wire protocols.

use std::fmt;
use thiserror::Error;

/// Closed set of fault codes. Every error that crosses the bus is one of
/// these; anything else is a bug in the sender.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FaultCode {
    MalformedXml,
    AuthFailed,
    UnknownOperation,
    BadParams,
    ServiceUnavailable,
    Timeout,
    ServiceFault,
    OutOfRange,
}

impl FaultCode {
    pub const ALL: [FaultCode; 8] = [
        FaultCode::MalformedXml,
        FaultCode::AuthFailed,
        FaultCode::UnknownOperation,
        FaultCode::BadParams,
        FaultCode::ServiceUnavailable,
        FaultCode::Timeout,
        FaultCode::ServiceFault,
        FaultCode::OutOfRange,
    ];

    /// Wire spelling of the code.
    pub fn as_str(&self) -> &'static str {
        match self {
            FaultCode::MalformedXml => "MALFORMED_XML",
            FaultCode::AuthFailed => "AUTH_FAILED",
            FaultCode::UnknownOperation => "UNKNOWN_OPERATION",
            FaultCode::BadParams => "BAD_PARAMS",
            FaultCode::ServiceUnavailable => "SERVICE_UNAVAILABLE",
            FaultCode::Timeout => "TIMEOUT",
            FaultCode::ServiceFault => "SERVICE_FAULT",
            FaultCode::OutOfRange => "OUT_OF_RANGE",
        }
    }

    /// Parses a wire spelling. Unknown tokens are a decode error at the
    /// caller.
    pub fn parse(s: &str) -> Option<FaultCode> {
        Self::ALL.iter().copied().find(|c| c.as_str() == s)
    }
}

impl fmt::Display for FaultCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A structured error: code from the closed set plus a human-readable,
/// non-empty message.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{code}: {message}")]
pub struct Fault {
    pub code: FaultCode,
    pub message: String,
}

impl Fault {
    pub fn new(code: FaultCode, message: impl Into<String>) -> Fault {
        let mut message = message.into();
        if message.is_empty() {
            message.push_str("(no detail)");
        }
        Fault { code, message }
    }

    pub fn malformed_xml(message: impl Into<String>) -> Fault {
        Fault::new(FaultCode::MalformedXml, message)
    }

    pub fn bad_params(message: impl Into<String>) -> Fault {
        Fault::new(FaultCode::BadParams, message)
    }

    pub fn auth_failed() -> Fault {
        // Uniform message: never reveals whether the client id or the
        // secret was wrong.
        Fault::new(FaultCode::AuthFailed, "authentication failed")
    }

    pub fn unknown_operation(message: impl Into<String>) -> Fault {
        Fault::new(FaultCode::UnknownOperation, message)
    }

    pub fn service_unavailable(message: impl Into<String>) -> Fault {
        Fault::new(FaultCode::ServiceUnavailable, message)
    }

    pub fn timeout(message: impl Into<String>) -> Fault {
        Fault::new(FaultCode::Timeout, message)
    }

    pub fn service_fault(message: impl Into<String>) -> Fault {
        Fault::new(FaultCode::ServiceFault, message)
    }

    pub fn out_of_range(message: impl Into<String>) -> Fault {
        Fault::new(FaultCode::OutOfRange, message)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_round_trip_their_wire_spelling() {
        for code in FaultCode::ALL {
            assert_eq!(FaultCode::parse(code.as_str()), Some(code));
        }
        assert_eq!(FaultCode::parse("NOT_A_CODE"), None);
        assert_eq!(FaultCode::parse("timeout"), None);
    }

    #[test]
    fn empty_message_is_replaced() {
        let f = Fault::new(FaultCode::Timeout, "");
        assert!(!f.message.is_empty());
    }
}
