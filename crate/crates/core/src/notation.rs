/// Rendering style for monomials and tensors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Notation {
    /// `2t^1t2^1 dt/t`, `2a3*b1`
    #[default]
    Ascii,
    /// `2t¹t₂¹ dt/t`, `2α₃⊗β₁`
    Unicode,
}

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
const SUBSCRIPTS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];

fn map_digits(x: u64, table: &[char; 10]) -> String {
    x.to_string()
        .chars()
        .map(|c| table[c.to_digit(10).unwrap() as usize])
        .collect()
}

pub(crate) fn sup(x: u64) -> String {
    map_digits(x, &SUPERSCRIPTS)
}

pub(crate) fn sub(x: u64) -> String {
    map_digits(x, &SUBSCRIPTS)
}

/// Coefficient prefix: empty for 1.
pub(crate) fn coeff_prefix(c: u64) -> String {
    if c == 1 {
        String::new()
    } else {
        c.to_string()
    }
}

/// Joins rendered terms with `+`; an empty sum renders as `0`.
pub(crate) fn join_terms(terms: Vec<String>, suffix: &str) -> String {
    if terms.is_empty() {
        "0".to_string()
    } else {
        format!("{}{}", terms.join("+"), suffix)
    }
}
