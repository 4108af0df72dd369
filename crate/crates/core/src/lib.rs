//! Core vocabulary of the c2bus service bus: the protocol-neutral message
//! model, the exact text encoding of typed values, bit-exact wire codecs for
//! the three supported protocols (SOAP-subset XML over HTTP, REST over HTTP,
//! line-oriented socket RPC over TCP), service descriptors, and the in-memory
//! registry with passive endpoint health tracking.
//!
//! Everything in this crate is transport-agnostic except [`wire::http`],
//! which implements the minimal HTTP/1.1 subset the bus uses
//! (`Content-Length` framing only, one exchange per connection).

pub mod clock;
pub mod descriptor;
pub mod fault;
pub mod message;
pub mod pct;
pub mod registry;
pub mod value;
pub mod wire;
pub mod xml;

pub use fault::{Fault, FaultCode};
pub use message::{
    validate_against_signature, CanonicalMessage, CanonicalRequest, CanonicalResponse, MessageId,
    Outcome, SessionToken,
};
pub use value::{Matrix, TypeTag, Value};
