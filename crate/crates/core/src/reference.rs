//! Published values the pipeline is compared against.
//!
//! Rows name idempotents in the expression language of
//! [`crate::idempotent::known::parse_named`]: basis labels, `id`, `id_2A`,
//! `id_3A`, the `y` names, and the generator maps `phi`, `phi_t`, `phi_g`.
//! Where the printed label cannot be what is meant, `expr` holds the reading
//! used and `note` says why.

use crate::catalog::NsType;

#[derive(Debug, Clone, Copy)]
pub struct SpectrumRow {
    pub type_tag: NsType,
    /// Orbit label as printed.
    pub label: &'static str,
    pub expr: &'static str,
    pub size: usize,
    /// Multiset as printed; `None` for rows given only as "0, 1 and six values in (0, 1)".
    pub spectrum: Option<&'static str>,
    pub note: Option<&'static str>,
}

#[derive(Debug, Clone, Copy)]
pub struct CountingEntry {
    pub type_tag: NsType,
    pub label: &'static str,
    pub expr: &'static str,
    pub d: usize,
    pub n_x: usize,
    /// Element checked instead when the printed one does not carry the printed values.
    pub reading: Option<&'static str>,
    pub note: Option<&'static str>,
}

#[derive(Debug, Clone, Copy)]
pub struct SubalgebraRow {
    pub type_tag: NsType,
    pub label: &'static str,
    pub basis: [&'static str; 3],
    pub orbit_size: usize,
}

/// Number of maximal associative subalgebras: `(trivial, non-trivial)`;
/// `None` for the trivial count of 4A (an infinite family).
#[derive(Debug, Clone, Copy)]
pub struct MaximalCounts {
    pub type_tag: NsType,
    pub trivial: Option<usize>,
    pub nontrivial: usize,
    pub anchor: &'static str,
}

const fn row(type_tag: NsType, label: &'static str, expr: &'static str, size: usize, spectrum: &'static str) -> SpectrumRow {
    SpectrumRow { type_tag, label, expr, size, spectrum: Some(spectrum), note: None }
}

/// Number of idempotents (isolated ones for 4A) and `|Aut|`.
pub fn idempotent_count(t: NsType) -> Option<usize> {
    match t {
        NsType::A2 => Some(8),
        NsType::A3 => Some(16),
        NsType::C3 => Some(8),
        NsType::A4 => Some(18),
        NsType::B4 => Some(32),
        NsType::A5 => Some(44),
        NsType::A6 => Some(208),
        NsType::B2 => None,
    }
}

/// `|Aut(NX)|` from the stated group structure (S₃, D₈, F₂₀, D₁₂).
pub fn group_order(t: NsType) -> Option<usize> {
    match t {
        NsType::A2 | NsType::A3 | NsType::C3 => Some(6),
        NsType::A4 | NsType::B4 => Some(8),
        NsType::A5 => Some(20),
        NsType::A6 => Some(12),
        NsType::B2 => None,
    }
}

/// `l(id)` where it is stated.
pub fn identity_length(t: NsType) -> Option<&'static str> {
    match t {
        NsType::B4 => Some("19/5"),
        NsType::A6 => Some("51/10"),
        _ => None,
    }
}

/// The smallest length greater than 1 used in the length argument.
pub fn min_length_above_one(t: NsType) -> Option<&'static str> {
    match t {
        NsType::B4 | NsType::A6 => Some("7/5"),
        _ => None,
    }
}

/// 4A family: parameter range and the parameters stated to be exceptional.
pub const FAMILY_RANGE: (&str, &str) = ("-3/5", "1");
pub const FAMILY_STATED_EXCEPTIONAL: [&str; 2] = ["0", "2/3"];

pub const SPECTRA: &[SpectrumRow] = &[
    row(NsType::A2, "[a_t]", "a_t", 3, "{0, 1, 1/4}"),
    row(NsType::A2, "[id_{2A} − a_t]", "id - a_t", 3, "{0, 1, 3/4}"),
    row(NsType::A3, "[a_t]", "a_t", 3, "{0, 1, 1/4, 1/32}"),
    row(NsType::A3, "[id_{3A} − a_t]", "id - a_t", 3, "{0, 1, 3/4, 31/32}"),
    row(NsType::A3, "[u_ρ]", "u_r", 1, "{0, 1, 1/3, 1/3}"),
    row(NsType::A3, "[id_{3A} − u_ρ]", "id - u_r", 1, "{0, 1, 2/3, 2/3}"),
    row(NsType::A3, "[y_{3A}]", "y_3A", 3, "{0, 1, 1/3, 13/16}"),
    row(NsType::A3, "[id_{3A} − y_{3A}]", "id - y_3A", 3, "{0, 1, 2/3, 3/16}"),
    row(NsType::C3, "[a_t]", "a_t", 3, "{0, 1, 1/32}"),
    row(NsType::C3, "[id_{3C} − a_t]", "id - a_t", 3, "{0, 1, 31/32}"),
    row(NsType::A4, "[a_t]", "a_t", 4, "{0, 0, 1, 1/4, 1/32}"),
    row(NsType::A4, "[id_{4A} − a_t]", "id - a_t", 4, "{0, 1, 1, 3/4, 31/32}"),
    row(NsType::A4, "[v_ρ]", "v_r", 1, "{0, 1, 1/2, 3/8, 3/8}"),
    row(NsType::A4, "[id_{4A} − v_ρ]", "id - v_r", 1, "{0, 1, 1/2, 5/8, 5/8}"),
    row(NsType::A4, "[y^{(2)}_{4A}]", "y2", 4, "{0, 1, 1/14, 5/14, 6/7}"),
    row(NsType::A4, "[id_{4A} − y^{(2)}_{4A}]", "id - y2", 4, "{0, 1, 13/14, 9/14, 1/7}"),
    row(NsType::B4, "[a_t]", "a_t", 4, "{0, 0, 1, 1/4, 1/32}"),
    row(NsType::B4, "[id_{4B} − a_t]", "id - a_t", 4, "{0, 1, 1, 3/4, 31/32}"),
    row(NsType::B4, "[a_{ρ²}]", "a_r2", 1, "{0, 0, 1, 1/4, 1/4}"),
    row(NsType::B4, "[id_{4B} − a_{ρ²}]", "id - a_r2", 1, "{0, 1, 1, 3/4, 3/4}"),
    row(NsType::B4, "[id_{2A}]", "id_2A", 2, "{0, 1, 1, 1, 1/4}"),
    row(NsType::B4, "[id_{2A} − a_{ρ²}]", "id_2A - a_r2", 2, "{0, 0, 0, 1, 3/4}"),
    row(NsType::B4, "[id_{2A} − a_t]", "id_2A - a_t", 4, "{0, 0, 1, 3/4, 7/32}"),
    row(NsType::B4, "[id_{4B} − id_{2A} + a_t]", "id - id_2A + a_t", 4, "{0, 1, 1, 1/4, 15/32}"),
    row(NsType::B4, "[y_{4B}]", "y_4B", 4, "{0, 1, 1/11, 21/22, 9/22}"),
    row(NsType::B4, "[id_{4B} − y_{4B}]", "id - y_4B", 4, "{0, 1, 10/11, 1/22, 13/22}"),
    row(NsType::A5, "[a_t]", "a_t", 5, "{0, 0, 1, 1/4, 1/32, 1/32}"),
    row(NsType::A5, "[id_{5A} − a_t]", "id - a_t", 5, "{0, 1, 1, 3/4, 31/32, 31/32}"),
    row(NsType::A5, "[y^{(1)}_{5A}]", "y1", 2, "{0, 1, 3/5, 3/5, 2/5, 2/5}"),
    row(NsType::A5, "[y^{(3)}_{5A}]", "y3", 10, "{0, 1, 7/8, 3/5, 2/5, 1/8}"),
    row(NsType::A5, "[y^{(2)}_{5A}]", "y2", 10, "{0, 0, 1, 5/64, 57/64, 3/8}"),
    row(NsType::A5, "[id_{5A} − y^{(2)}_{5A}]", "id - y2", 10, "{0, 1, 1, 59/64, 7/64, 5/8}"),
    row(NsType::A6, "[a_t]", "a_t", 6, "{0, 0, 0, 1, 1/4, 1/4, 1/32, 1/32}"),
    row(NsType::A6, "[a_{ρ³}]", "a_r3", 1, "{0, 0, 0, 0, 1, 1/4, 1/4, 1/4}"),
    row(NsType::A6, "[u_{ρ²}]", "u_r2", 1, "{0, 0, 0, 1, 1/3, 1/3, 1/3, 1/3}"),
    row(NsType::A6, "[a_{ρ³} + u_{ρ²}]", "a_r3 + u_r2", 1, "{0, 1, 1, 1/4, 1/3, 1/3, 7/12, 7/12}"),
    row(NsType::A6, "[id_{2A}]", "id_2A", 3, "{0, 1, 1, 1, 1/4, 3/10, 3/10, 1/20}"),
    row(NsType::A6, "[id_{2A} − a_t]", "id_2A - a_t", 6, "{0, 0, 1, 3/4, 3/10, 1/20, 7/32, 3/160}"),
    row(NsType::A6, "[id_{2A} − a_{ρ³}]", "id_2A - a_r3", 3, "{0, 0, 0, 1, 3/4, 3/10, 1/20, 1/20}"),
    row(NsType::A6, "[id_{3A}]", "id_3A", 2, "{0, 1, 1, 1, 1, 5/14, 5/14, 5/14}"),
    row(NsType::A6, "[id_{3A} − a_t]", "id_3A - a_t", 6, "{0, 0, 1, 3/4, 5/14, 3/28, 31/32, 73/224}"),
    row(NsType::A6, "[id_{3A} − u_{ρ²}]", "id_3A - u_r2", 2, "{0, 0, 1, 2/3, 2/3, 1/42, 1/42, 5/14}"),
    row(NsType::A6, "[y_{3A}]", "y_3A", 6, "{0, 0, 0, 1, 1/3, 1/3, 1/16, 13/16}"),
    row(NsType::A6, "[id_{3A} − y_{3A}]", "id_3A - y_3A", 6, "{0, 0, 1, 2/3, 3/16, 5/14, 1/42, 33/112}"),
    row(NsType::A6, "[y^{(1)}_{6A}]", "y1", 3, "{0, 1, 1, 1, 23/28, 23/28, 5/14, 5/14}"),
    SpectrumRow {
        type_tag: NsType::A6,
        label: "[y^{(1)}_{6A} − a_{ρ²}]",
        expr: "y1 - a_r3",
        size: 3,
        spectrum: Some("{0, 0, 1, 4/7, 5/14, 3/4, 3/28, 23/28}"),
        note: Some("a_{ρ²} is not a basis vector of 6A; read as a_{ρ³}"),
    },
    row(NsType::A6, "[y^{(2)}_{6A}]", "y2", 6, "{0, 1, 1, 1/4, 1/3, 3/32, 27/32, 7/12}"),
    row(NsType::A6, "[y^{(3)}_{6A}]", "y3", 6, "{0, 0, 1, 2/3, 5/14, 1/42, 1/112, 85/112}"),
    row(NsType::A6, "[y^{(4)}_{6A}]", "y4", 6, "{0, 0, 1, 1/12, 1/12, 11/12, 7/18, 7/18}"),
    row(NsType::A6, "[y^{(5)}_{6A}]", "y5", 6, "{0, 1, 1, 5/6, 31/45, 2/15, 29/30, 7/18}"),
    row(NsType::A6, "[y^{(6)}_{6A}]", "y6", 6, "{0, 1, 3/11, 1/22, 13/22, 1/44, 7/44, 35/44}"),
    SpectrumRow { type_tag: NsType::A6, label: "[y^{(7)}_{6A}]", expr: "y7", size: 12, spectrum: None, note: None },
    SpectrumRow { type_tag: NsType::A6, label: "[y^{(8)}_{6A}]", expr: "y8", size: 12, spectrum: None, note: None },
];

const fn nx(type_tag: NsType, label: &'static str, expr: &'static str, d: usize, n_x: usize) -> CountingEntry {
    CountingEntry { type_tag, label, expr, d, n_x, reading: None, note: None }
}

pub const COUNTING: &[CountingEntry] = &[
    nx(NsType::B4, "a_t", "a_t", 2, 1),
    nx(NsType::B4, "a_{ρ²}", "a_r2", 2, 1),
    nx(NsType::B4, "id_{2A} − a_{ρ²}", "id_2A - a_r2", 3, 3),
    nx(NsType::B4, "id_{2A} − a_t", "id_2A - a_t", 2, 1),
    nx(NsType::A6, "a_t", "a_t", 3, 3),
    nx(NsType::A6, "a_{ρ³}", "a_r3", 4, 7),
    nx(NsType::A6, "u_{ρ²}", "u_r2", 3, 3),
    nx(NsType::A6, "id_{6A} − a_{ρ³} − u_{ρ²}", "id - a_r3 - u_r2", 2, 1),
    nx(NsType::A6, "id_{6A} − id_{2A}", "id - id_2A", 3, 3),
    nx(NsType::A6, "id_{2A} − a_t", "id_2A - a_t", 2, 1),
    CountingEntry {
        type_tag: NsType::A6,
        label: "id_{6A} − id_{2A} + a_{ρ³}",
        expr: "id - id_2A + a_r3",
        d: 3,
        n_x: 3,
        reading: Some("id_2A - a_r3"),
        note: Some("the printed element is the complement of id_{2A} − a_{ρ³}, whose eigenvalue 1 is simple, so its d is 1; the orbit with d = 3 otherwise missing from the table is [id_{2A} − a_{ρ³}]"),
    },
    nx(NsType::A6, "id_{6A} − id_{3A}", "id - id_3A", 4, 7),
    nx(NsType::A6, "id_{3A} − a_t", "id_3A - a_t", 2, 1),
    nx(NsType::A6, "id_{3A} − u_{ρ²}", "id_3A - u_r2", 2, 1),
    nx(NsType::A6, "y_{3A}", "y_3A", 3, 3),
    nx(NsType::A6, "id_{3A} − y_{3A}", "id_3A - y_3A", 2, 1),
    nx(NsType::A6, "id_{6A} − y^{(1)}_{6A}", "id - y1", 3, 3),
    CountingEntry {
        type_tag: NsType::A6,
        label: "y^{(1)}_{6A} − a_{ρ²}",
        expr: "y1 - a_r3",
        d: 2,
        n_x: 1,
        reading: None,
        note: Some("a_{ρ²} is not a basis vector of 6A; read as a_{ρ³}"),
    },
    nx(NsType::A6, "id_{6A} − y^{(2)}_{6A}", "id - y2", 2, 1),
    nx(NsType::A6, "y^{(3)}_{6A}", "y3", 2, 1),
    nx(NsType::A6, "y^{(4)}_{6A}", "y4", 2, 1),
    CountingEntry {
        type_tag: NsType::A6,
        label: "id_{(6A)} − y^{(5)}_{6A}",
        expr: "id - y5",
        d: 2,
        n_x: 1,
        reading: None,
        note: Some("id_{(6A)} read as id_{6A}"),
    },
];

const fn sub(type_tag: NsType, label: &'static str, basis: [&'static str; 3], orbit_size: usize) -> SubalgebraRow {
    SubalgebraRow { type_tag, label, basis, orbit_size }
}

/// Three-dimensional maximal associative subalgebras given explicitly, with
/// the size of their orbit (`0` where no size is stated).
pub const SUBALGEBRAS: &[SubalgebraRow] = &[
    sub(NsType::A4, "⟨⟨a_t, a_{g_2}, id_{4A} − a_t − a_{g_2}⟩⟩", ["a_t", "a_g2", "id - a_t - a_g2"], 0),
    sub(NsType::A4, "⟨⟨a_g, a_{g_{-1}}, id_{4A} − a_g − a_{g_{-1}}⟩⟩", ["a_g", "a_gm1", "id - a_g - a_gm1"], 0),
    sub(NsType::B4, "U^{(1)}_{4B}", ["a_t", "id_2A - a_t", "phi(id_2A) - a_r2"], 4),
    sub(NsType::B4, "U^{(2)}_{4B}", ["a_r2", "id_2A - a_r2", "phi(id_2A) - a_r2"], 1),
    sub(NsType::A5, "⟨⟨a_t, y^{(2)}_{5A}, (y^{(2)}_{5A})^{φ}⟩⟩", ["a_t", "y2", "phi(y2)"], 5),
    sub(NsType::A6, "⟨⟨a_{ρ³}, u_{ρ²}, id − a_{ρ³} − u_{ρ²}⟩⟩", ["a_r3", "u_r2", "id - a_r3 - u_r2"], 1),
    sub(NsType::A6, "⟨⟨a_{ρ³}, id − id_{2A}, id_{2A} − a_{ρ³}⟩⟩", ["a_r3", "id - id_2A", "id_2A - a_r3"], 3),
    sub(NsType::A6, "⟨⟨a_{ρ³}, y^{(1)} − a_{ρ³}, id − y^{(1)}⟩⟩", ["a_r3", "y1 - a_r3", "id - y1"], 3),
    sub(NsType::A6, "⟨⟨u_{ρ²}, id_{3A} − u_{ρ²}, id − id_{3A}⟩⟩", ["u_r2", "id_3A - u_r2", "id - id_3A"], 2),
    sub(NsType::A6, "⟨⟨a_t, id_{2A} − a_t, id − id_{2A}⟩⟩", ["a_t", "id_2A - a_t", "id - id_2A"], 6),
    sub(NsType::A6, "⟨⟨a_t, id_{3A} − a_t, id − id_{3A}⟩⟩", ["a_t", "id_3A - a_t", "id - id_3A"], 6),
    sub(NsType::A6, "⟨⟨a_t, id − y^{(2)}, (y_{3A})^{φ}⟩⟩", ["a_t", "id - y2", "phi(y_3A)"], 6),
    sub(NsType::A6, "⟨⟨y_{3A}, id_{3A} − y_{3A}, id − id_{3A}⟩⟩", ["y_3A", "id_3A - y_3A", "id - id_3A"], 6),
    sub(NsType::A6, "⟨⟨y^{(3)}, (y_{3A})^{φ}, id − y^{(1)}⟩⟩", ["y3", "phi(y_3A)", "id - y1"], 6),
    sub(NsType::A6, "⟨⟨y^{(4)}, id − y^{(5)}, id_{2A}^{φ(g)} − a_{ρ³}⟩⟩", ["y4", "id - y5", "phi_g(id_2A) - a_r3"], 6),
];

pub const MAXIMAL: &[MaximalCounts] = &[
    MaximalCounts { type_tag: NsType::A2, trivial: None, nontrivial: 0, anchor: "§4 (iii)" },
    MaximalCounts { type_tag: NsType::A3, trivial: None, nontrivial: 0, anchor: "§4 (iii)" },
    MaximalCounts { type_tag: NsType::C3, trivial: None, nontrivial: 0, anchor: "§4 (iii)" },
    MaximalCounts { type_tag: NsType::A4, trivial: None, nontrivial: 2, anchor: "§4 (iv)" },
    MaximalCounts { type_tag: NsType::B4, trivial: Some(4), nontrivial: 5, anchor: "§4 (v); §3.3 \"exactly 9 maximal\"" },
    MaximalCounts { type_tag: NsType::A5, trivial: Some(6), nontrivial: 5, anchor: "§4 (vi); §3.5 \"exactly 11 maximal\"" },
    MaximalCounts { type_tag: NsType::A6, trivial: Some(30), nontrivial: 45, anchor: "§4 (vii); §3.6 \"exactly 75 maximal\"" },
];

/// Orbits `[V_y]` of trivial maximal subalgebras with their sizes; together
/// they account for every trivial maximal subalgebra of the type.
pub const TRIVIAL_ORBITS: &[(NsType, &str, usize)] = &[
    (NsType::B4, "y_4B", 4),
    (NsType::A5, "y1", 1),
    (NsType::A5, "y3", 5),
    (NsType::A6, "y6", 6),
    (NsType::A6, "y7", 12),
    (NsType::A6, "y8", 12),
];
