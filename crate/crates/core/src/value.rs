//! Typed parameter values and their exact, deterministic text encoding.
//!
//! The text grammar is the single source of truth for how a value appears
//! inside any wire document: SOAP element text, REST query strings and
//! response lines, and SOCK frames all embed the output of
//! [`Value::to_text`] (after protocol-specific escaping).

use crate::fault::Fault;
use base64::engine::general_purpose::STANDARD as BASE64;
use base64::Engine as _;
use std::fmt;

/// Tag identifying the payload type of a [`Value`]. Closed enumeration;
/// unknown tag strings are a decode error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TypeTag {
    Int,
    Float,
    Bool,
    Str,
    Blob,
    Matrix,
}

impl TypeTag {
    pub const ALL: [TypeTag; 6] = [
        TypeTag::Int,
        TypeTag::Float,
        TypeTag::Bool,
        TypeTag::Str,
        TypeTag::Blob,
        TypeTag::Matrix,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TypeTag::Int => "int",
            TypeTag::Float => "float",
            TypeTag::Bool => "bool",
            TypeTag::Str => "string",
            TypeTag::Blob => "blob",
            TypeTag::Matrix => "matrix",
        }
    }

    pub fn parse(s: &str) -> Result<TypeTag, Fault> {
        Self::ALL
            .iter()
            .copied()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Fault::bad_params(format!("unknown type tag {s:?}")))
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Integer matrix with row-major 32-bit signed cells. Dimensions are at
/// least 1x1 and the cell count always equals `rows * cols`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: u32,
    cols: u32,
    cells: Vec<i32>,
}

impl Matrix {
    pub fn new(rows: u32, cols: u32, cells: Vec<i32>) -> Result<Matrix, Fault> {
        if rows == 0 || cols == 0 {
            return Err(Fault::bad_params("matrix dimensions must be at least 1x1"));
        }
        let expected = (rows as u64) * (cols as u64);
        if cells.len() as u64 != expected {
            return Err(Fault::bad_params(format!(
                "matrix cell count {} does not match {}x{}",
                cells.len(),
                rows,
                cols
            )));
        }
        Ok(Matrix { rows, cols, cells })
    }

    pub fn rows(&self) -> u32 {
        self.rows
    }

    pub fn cols(&self) -> u32 {
        self.cols
    }

    pub fn cells(&self) -> &[i32] {
        &self.cells
    }

    /// Row-major cell access. Panics on out-of-bounds indices.
    pub fn get(&self, row: u32, col: u32) -> i32 {
        assert!(row < self.rows && col < self.cols, "matrix index out of bounds");
        self.cells[(row as usize) * (self.cols as usize) + col as usize]
    }
}

/// A tagged parameter value. Floats are never NaN: NaN is rejected both at
/// construction ([`Value::float`]) and at parse time.
#[derive(Debug, Clone)]
pub enum Value {
    Int(i64),
    Float(f64),
    Bool(bool),
    Str(String),
    Blob(Vec<u8>),
    Matrix(Matrix),
}

impl Value {
    /// Constructs a float value, rejecting NaN (no wire grammar exists for
    /// it).
    pub fn float(v: f64) -> Result<Value, Fault> {
        if v.is_nan() {
            return Err(Fault::bad_params("NaN is not a representable float value"));
        }
        Ok(Value::Float(v))
    }

    pub fn str(s: impl Into<String>) -> Value {
        Value::Str(s.into())
    }

    pub fn tag(&self) -> TypeTag {
        match self {
            Value::Int(_) => TypeTag::Int,
            Value::Float(_) => TypeTag::Float,
            Value::Bool(_) => TypeTag::Bool,
            Value::Str(_) => TypeTag::Str,
            Value::Blob(_) => TypeTag::Blob,
            Value::Matrix(_) => TypeTag::Matrix,
        }
    }

    /// Deterministic text encoding:
    /// - int: decimal
    /// - float: shortest decimal string that parses back to the identical
    ///   64-bit float
    /// - bool: `true` / `false`
    /// - string: the string itself (codecs apply their own escaping)
    /// - blob: standard base64 with padding, no line breaks
    /// - matrix: `<rows>,<cols>;` then row-major cells, comma-separated
    pub fn to_text(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::Float(v) => v.to_string(),
            Value::Bool(v) => v.to_string(),
            Value::Str(v) => v.clone(),
            Value::Blob(v) => BASE64.encode(v),
            Value::Matrix(m) => {
                let mut s = format!("{},{};", m.rows, m.cols);
                for (i, cell) in m.cells.iter().enumerate() {
                    if i > 0 {
                        s.push(',');
                    }
                    s.push_str(&cell.to_string());
                }
                s
            }
        }
    }

    /// Inverse of [`Value::to_text`] on its image. Floats additionally
    /// accept standard decimal and scientific notation.
    pub fn from_text(tag: TypeTag, text: &str) -> Result<Value, Fault> {
        match tag {
            TypeTag::Int => text
                .parse::<i64>()
                .map(Value::Int)
                .map_err(|e| Fault::bad_params(format!("invalid int parameter: {e}"))),
            TypeTag::Float => {
                let v: f64 = text
                    .parse()
                    .map_err(|e| Fault::bad_params(format!("invalid float parameter: {e}")))?;
                Value::float(v)
            }
            TypeTag::Bool => match text {
                "true" => Ok(Value::Bool(true)),
                "false" => Ok(Value::Bool(false)),
                _ => Err(Fault::bad_params("invalid bool parameter, expected true or false")),
            },
            TypeTag::Str => Ok(Value::Str(text.to_string())),
            TypeTag::Blob => BASE64
                .decode(text)
                .map(Value::Blob)
                .map_err(|e| Fault::bad_params(format!("invalid base64 blob: {e}"))),
            TypeTag::Matrix => parse_matrix(text).map(Value::Matrix),
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Value::Int(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Float(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Value::Bool(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            Value::Str(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_blob(&self) -> Option<&[u8]> {
        match self {
            Value::Blob(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_matrix(&self) -> Option<&Matrix> {
        match self {
            Value::Matrix(v) => Some(v),
            _ => None,
        }
    }
}

// Bit-exact float comparison: round trips are checked down to the exact
// 64-bit pattern, so 0.0 and -0.0 are distinct here.
impl PartialEq for Value {
    fn eq(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Int(a), Value::Int(b)) => a == b,
            (Value::Float(a), Value::Float(b)) => a.to_bits() == b.to_bits(),
            (Value::Bool(a), Value::Bool(b)) => a == b,
            (Value::Str(a), Value::Str(b)) => a == b,
            (Value::Blob(a), Value::Blob(b)) => a == b,
            (Value::Matrix(a), Value::Matrix(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Value {}

fn parse_matrix(text: &str) -> Result<Matrix, Fault> {
    let (header, body) = text
        .split_once(';')
        .ok_or_else(|| Fault::bad_params("matrix text must be <rows>,<cols>;<cells>"))?;
    let (rows, cols) = header
        .split_once(',')
        .ok_or_else(|| Fault::bad_params("matrix header must be <rows>,<cols>"))?;
    let rows: u32 = rows
        .parse()
        .map_err(|e| Fault::bad_params(format!("invalid matrix row count: {e}")))?;
    let cols: u32 = cols
        .parse()
        .map_err(|e| Fault::bad_params(format!("invalid matrix column count: {e}")))?;
    let mut cells = Vec::new();
    if !body.is_empty() {
        for cell in body.split(',') {
            let v: i32 = cell
                .parse()
                .map_err(|e| Fault::bad_params(format!("invalid matrix cell {cell:?}: {e}")))?;
            cells.push(v);
        }
    }
    Matrix::new(rows, cols, cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fault::FaultCode;
    use proptest::prelude::*;

    #[test]
    fn integral_float_formats_without_fraction() {
        assert_eq!(Value::Float(45.0).to_text(), "45");
    }

    #[test]
    fn matrix_formats_per_grammar() {
        let m = Matrix::new(2, 2, vec![0, 1, 1, 0]).unwrap();
        assert_eq!(Value::Matrix(m).to_text(), "2,2;0,1,1,0");
    }

    #[test]
    fn short_float_text_reparses_to_identical_bits() {
        // Round-trip oracle: the formatted text must parse back to the
        // exact same 64-bit float.
        let v = 9.8_f64;
        let text = Value::Float(v).to_text();
        assert_eq!(text, "9.8");
        let back: f64 = text.parse().unwrap();
        assert_eq!(back.to_bits(), v.to_bits());
    }

    #[test]
    fn parse_float_accepts_decimal_and_scientific() {
        assert_eq!(Value::from_text(TypeTag::Float, "45").unwrap(), Value::Float(45.0));
        assert_eq!(
            Value::from_text(TypeTag::Float, "1.5e3").unwrap(),
            Value::Float(1500.0)
        );
    }

    #[test]
    fn parse_rejects_nan() {
        let err = Value::from_text(TypeTag::Float, "NaN").unwrap_err();
        assert_eq!(err.code, FaultCode::BadParams);
        assert!(Value::float(f64::NAN).is_err());
    }

    #[test]
    fn parse_matrix_cell_count_mismatch() {
        let err = Value::from_text(TypeTag::Matrix, "2,2;0,1,1").unwrap_err();
        assert_eq!(err.code, FaultCode::BadParams);
    }

    #[test]
    fn parse_bool_is_strict() {
        assert_eq!(Value::from_text(TypeTag::Bool, "true").unwrap(), Value::Bool(true));
        assert!(Value::from_text(TypeTag::Bool, "True").is_err());
        assert!(Value::from_text(TypeTag::Bool, "1").is_err());
    }

    #[test]
    fn parse_rejects_bad_base64() {
        assert!(Value::from_text(TypeTag::Blob, "not base64!").is_err());
        // Padding may not be omitted.
        assert!(Value::from_text(TypeTag::Blob, "QQ").is_err());
        assert_eq!(
            Value::from_text(TypeTag::Blob, "QQ==").unwrap(),
            Value::Blob(b"A".to_vec())
        );
    }

    #[test]
    fn matrix_invariants() {
        assert!(Matrix::new(0, 2, vec![]).is_err());
        assert!(Matrix::new(2, 2, vec![1, 2, 3]).is_err());
        let m = Matrix::new(2, 3, vec![1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(m.get(1, 2), 6);
    }

    #[test]
    fn negative_zero_round_trips_bit_exactly() {
        let v = Value::Float(-0.0);
        assert_eq!(v.to_text(), "-0");
        let back = Value::from_text(TypeTag::Float, "-0").unwrap();
        assert_eq!(back, v);
        assert_ne!(back, Value::Float(0.0));
    }

    fn arb_float() -> impl Strategy<Value = f64> {
        prop::num::f64::POSITIVE
            | prop::num::f64::NEGATIVE
            | prop::num::f64::ZERO
            | prop::num::f64::SUBNORMAL
            | prop::num::f64::INFINITE
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (1u32..5, 1u32..5).prop_flat_map(|(rows, cols)| {
            prop::collection::vec(any::<i32>(), (rows * cols) as usize)
                .prop_map(move |cells| Matrix::new(rows, cols, cells).unwrap())
        })
    }

    fn arb_value() -> impl Strategy<Value = Value> {
        prop_oneof![
            any::<i64>().prop_map(Value::Int),
            arb_float().prop_map(Value::Float),
            any::<bool>().prop_map(Value::Bool),
            ".{0,24}".prop_map(Value::Str),
            prop::collection::vec(any::<u8>(), 0..32).prop_map(Value::Blob),
            arb_matrix().prop_map(Value::Matrix),
        ]
    }

    proptest! {
        #[test]
        fn text_round_trip(v in arb_value()) {
            let text = v.to_text();
            let back = Value::from_text(v.tag(), &text).unwrap();
            prop_assert_eq!(back, v);
        }

        #[test]
        fn formatting_is_deterministic(v in arb_value()) {
            prop_assert_eq!(v.to_text(), v.clone().to_text());
        }
    }
}
