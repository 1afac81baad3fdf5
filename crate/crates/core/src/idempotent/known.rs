//! Published closed-form idempotents and the named elements used in tables.

use std::sync::Arc;

use crate::algebra::{Element, Idempotency};
use crate::automorphism::{generators, orbit_of, same_point, Automorphism};
use crate::catalog::{build, CatalogEntry, NsType};
use crate::error::{Error, Result};
use crate::expr::{parse_vector, Context, Value};
use crate::scalar::Scalar;

/// Ball radius of the two published decimal idempotents of 6A.
pub const BALL_RADIUS: f64 = 1e-10;

pub const GAMMA_6A: [f64; 8] = [
    0.118600343195,
    0.116899056660,
    0.672945208716,
    0.891963849266,
    0.034809133018,
    0.960846592395,
    -0.258738375363,
    -0.226937866453,
];

pub const DELTA_6A: [f64; 8] = [
    0.753376146443,
    -0.031896831434,
    -0.153112021089,
    0.729547069626,
    0.110690245253,
    0.844782757936,
    0.620071135272,
    -0.121749860276,
];

enum Form {
    Expr(&'static str),
    Ball(&'static [f64]),
    /// A printed form that fails idempotency, with the corrected form used for naming.
    Erratum { printed: &'static str, corrected: &'static str },
}

/// `(ascii name, display name, form)`; later forms may refer to earlier names.
fn closed_forms(t: NsType) -> Vec<(&'static str, &'static str, Form)> {
    use Form::*;
    match t {
        NsType::A3 => vec![("y_3A", "y_{3A}", Expr("2/9*(4*a_t + 4*a_g + a_gm1) - 1/4*u_r"))],
        NsType::A4 => vec![(
            "y2",
            "y^{(2)}_{4A}",
            Expr("2/7*(2 - sqrt(2))*(a_t + a_g) + 2/7*(2 + sqrt(2))*(a_gm1 + a_g2) - 2/7*v_r"),
        )],
        NsType::B4 => vec![(
            "y_4B",
            "y_{4B}",
            Expr("4/11*(1 + sqrt(2))*(a_t + a_g) + 4/11*(1 - sqrt(2))*(a_gm1 + a_g2) + 5/11*a_r2"),
        )],
        NsType::A5 => vec![
            ("y1", "y^{(1)}_{5A}", Expr("16/35*(a_t + a_g + a_gm1 + a_g2 + a_gm2) + 2^11/175*sqrt(5)*w_r")),
            (
                "y2",
                "y^{(2)}_{5A}",
                Expr("1/5*(-3/14*a_t + (16/7 + sqrt(5))*(a_g + a_gm1) + (16/7 - sqrt(5))*(a_g2 + a_gm2) - 2^7/7*sqrt(5)*w_r)"),
            ),
            (
                "y3",
                "y^{(3)}_{5A}",
                // the printed sign of w_ρ is inconsistent with the placement of β, β̄
                Erratum {
                    printed: "4/5*(4/7*a_t + (4/7 + sqrt(5)/5)*(a_g + a_gm1) + (4/7 - sqrt(5)/5)*(a_g2 + a_gm2) - 384/35*sqrt(5)*w_r)",
                    corrected: "4/5*(4/7*a_t + (4/7 + sqrt(5)/5)*(a_g + a_gm1) + (4/7 - sqrt(5)/5)*(a_g2 + a_gm2) + 384/35*sqrt(5)*w_r)",
                },
            ),
        ],
        NsType::A6 => vec![
            (
                "y1",
                "y^{(1)}_{6A}",
                Expr("1/21*(16*(a_g + a_gm1 + a_g2 + a_gm2) + 4*(a_t + a_g3) + 12*a_r3 - 9*u_r2)"),
            ),
            ("y2", "y^{(2)}_{6A}", Expr("1/36*(36*a_t + 32*(a_g + a_gm1) + 8*a_g3 - 9*u_r2)")),
            (
                "y3",
                "y^{(3)}_{6A}",
                Expr("1/252*(48*(a_t + 4*a_g2 + 4*a_gm2) - 8*(a_g3 + 4*a_g + 4*a_gm1) + 144*a_r3 - 45*u_r2)"),
            ),
            (
                "y4",
                "y^{(4)}_{6A}",
                Expr("1/216*(16*((5 + 4*sqrt(3))*(a_t + a_g) + (5 - 4*sqrt(3))*(a_gm2 + a_g3) - (a_gm1 + a_g2)) + 36*a_r3 + 45*u_r2)"),
            ),
            (
                "y5",
                "y^{(5)}_{6A}",
                Expr("1/1080*(80*((5 - 4*sqrt(3))*(a_t + a_g) + (5 + 4*sqrt(3))*(a_gm2 + a_g3)) + 784*(a_gm1 + a_g2) - 36*a_r3 + 225*u_r2)"),
            ),
            (
                "y6",
                "y^{(6)}_{6A}",
                Expr("1/66*(16*((1 - sqrt(3))*(a_t + a_g) + (1 + sqrt(3))*(a_gm2 + a_g3)) - 8*(a_gm1 + a_g2) + 6*a_r3 + 45*u_r2)"),
            ),
            ("y7", "y^{(7)}_{6A}", Ball(&GAMMA_6A)),
            ("y8", "y^{(8)}_{6A}", Ball(&DELTA_6A)),
        ],
        _ => vec![],
    }
}

#[derive(Debug, Clone)]
pub struct Named {
    pub name: String,
    pub display: String,
    pub element: Element,
    /// Published closed form (as opposed to a basis vector or derived identity).
    pub published: bool,
}

/// A published closed form that is not an idempotent.
#[derive(Debug, Clone)]
pub struct Discrepancy {
    pub type_tag: NsType,
    pub name: String,
    pub detail: String,
}

/// Expression context with basis labels, `id`, named elements and the
/// generator maps `phi_t`, `phi_g`, `phi` (the type's own generator), `conj`.
pub struct NamedContext<'a> {
    pub entry: &'a CatalogEntry,
    pub names: &'a [Named],
    pub gens: &'a [(String, Automorphism)],
}

impl Context for NamedContext<'_> {
    fn dim(&self) -> usize {
        self.entry.n()
    }

    fn lookup(&self, name: &str) -> Result<Value> {
        if let Some(nm) = self.names.iter().find(|nm| nm.name == name) {
            return Ok(Value::Vector(nm.element.coeffs().to_vec()));
        }
        crate::catalog::SpecContext { spec: self.entry.spec() }.lookup(name)
    }

    fn call(&self, name: &str, args: Vec<Value>) -> Result<Value> {
        let [arg] = <[Value; 1]>::try_from(args).map_err(|_| Error::Parse(format!("{name} takes one argument")))?;
        let x = self.entry.spec().element(arg.into_vector(self.dim())?)?;
        let y = match name {
            "conj" => x.conjugate(),
            _ => match generator_by_alias(self.gens, name) {
                Some(g) => g.apply(&x)?,
                None => {
                    let g = dihedral_map(self.entry, name).ok_or_else(|| Error::Parse(format!("unknown function `{name}`")))??;
                    g.apply(&x)?
                }
            },
        };
        Ok(Value::Vector(y.coeffs().to_vec()))
    }

    fn product(&self, u: &[Scalar], v: &[Scalar]) -> Result<Vec<Scalar>> {
        Ok(self.entry.spec().product_coeffs(u, v))
    }
}

/// `φ(t)`: `a_{g_i} ↦ a_{g_{−i}}` and `φ(g)`: `a_{g_i} ↦ a_{g_{2−i}}`, for
/// types where they are not listed among the generators.
fn dihedral_map(entry: &CatalogEntry, name: &str) -> Option<Result<Automorphism>> {
    let c = match name {
        "phi_t" => 0,
        "phi_g" => 2,
        _ => return None,
    };
    let n = entry.n_dihedral;
    let images = entry
        .axis_residue
        .iter()
        .map(|&i| {
            let j = (c + 2 * n - i) % n;
            entry.axis_residue.iter().position(|&r| r == j).map(|k| entry.axes[k])
        })
        .collect::<Option<Vec<usize>>>()?;
    Some(crate::automorphism::extend_axis_permutation(entry, &images))
}

/// `phi_t` ↦ φ(t), `phi_g` ↦ φ(g), `phi` ↦ the type-specific generator.
pub fn generator_by_alias<'a>(gens: &'a [(String, Automorphism)], alias: &str) -> Option<&'a Automorphism> {
    let want = |n: &str| match alias {
        "phi_t" => n == "φ(t)",
        "phi_g" => n == "φ(g)",
        "phi" => n.starts_with("φ_"),
        other => n == other,
    };
    gens.iter().find(|(n, _)| want(n)).map(|(_, a)| a)
}

/// Basis axes, embedded sub-identities, and published closed forms, plus the
/// list of closed forms that fail exact idempotency.
pub fn named_elements(entry: &CatalogEntry) -> Result<(Vec<Named>, Vec<Discrepancy>)> {
    let spec = entry.spec();
    let mut names = Vec::new();
    let mut bad = Vec::new();
    let push_basis = |names: &mut Vec<Named>, label: &str, ascii: &str| -> Result<()> {
        let element = entry.basis(label)?;
        names.push(Named { name: ascii.into(), display: label.into(), element, published: false });
        Ok(())
    };
    push_basis(&mut names, "a_t", "a_t")?;
    for (label, ascii) in [("u_ρ", "u"), ("v_ρ", "v"), ("w_ρ", "w"), ("a_ρ", "a_r"), ("a_{ρ²}", "a_r2"), ("a_{ρ³}", "a_r3"), ("u_{ρ²}", "u_r2")] {
        if spec.index_of(label).is_some() {
            push_basis(&mut names, label, ascii)?;
        }
    }
    for emb in &entry.embeddings {
        let sub = build(emb.subtype)?;
        let id = entry.embed(emb, &sub.identity())?;
        names.push(Named { name: format!("id_{}", emb.subtype), display: format!("id_{{{}}}", emb.subtype), element: id, published: false });
        if emb.subtype == NsType::A3 {
            let (sub_names, _) = named_elements(&sub)?;
            if let Some(y) = sub_names.iter().find(|n| n.name == "y_3A") {
                names.push(Named { name: "y_3A".into(), display: "y_{3A}".into(), element: entry.embed(emb, &y.element)?, published: true });
            }
        }
    }
    let gens = generators(entry)?;
    let parse = |names: &[Named], src: &str| -> Result<Element> {
        let ctx = NamedContext { entry, names, gens: &gens };
        spec.element(parse_vector(src, &ctx)?)
    };
    let holds = |x: &Element| matches!(x.is_idempotent(), Idempotency::ExactTrue | Idempotency::CertifiedTrue);
    for (ascii, display, form) in closed_forms(entry.tag) {
        let (element, corrected) = match form {
            Form::Expr(src) => (parse(&names, src)?, None),
            Form::Ball(mids) => (spec.element(mids.iter().map(|&m| Scalar::ball(m, BALL_RADIUS)).collect())?, None),
            Form::Erratum { printed, corrected } => (parse(&names, printed)?, Some(parse(&names, corrected)?)),
        };
        if holds(&element) {
            names.push(Named { name: ascii.into(), display: display.into(), element, published: true });
            continue;
        }
        let mut detail = format!(
            "closed form is not an idempotent ({:?}); residual {}",
            element.is_idempotent(),
            element.idempotency_residual()
        );
        if let Some(c) = corrected.filter(|c| holds(c)) {
            detail.push_str(&format!("; the idempotent {c} has the stated spectrum"));
            names.push(Named { name: ascii.into(), display: display.into(), element: c, published: false });
        }
        bad.push(Discrepancy { type_tag: entry.tag, name: display.into(), detail });
    }
    Ok((names, bad))
}

/// Parses an expression over basis labels, named elements and generator maps.
pub fn parse_named(entry: &CatalogEntry, names: &[Named], src: &str) -> Result<Element> {
    let gens = generators(entry)?;
    let ctx = NamedContext { entry, names, gens: &gens };
    entry.spec().element(parse_vector(src, &ctx)?)
}

/// 0, the identity, the axes, all named idempotents and their complements,
/// closed under the automorphism group.
pub fn known_idempotents(entry: &CatalogEntry, group: &[Automorphism]) -> Result<Vec<Element>> {
    let spec: &Arc<_> = entry.spec();
    let id = entry.identity();
    let (names, _) = named_elements(entry)?;
    let mut seeds = vec![spec.zero(), id.clone()];
    seeds.extend(entry.majorana_axes.iter().map(|&a| spec.basis(a)));
    seeds.extend(names.iter().filter(|n| n.element.is_idempotent() != Idempotency::ExactFalse).map(|n| n.element.clone()));
    let mut out: Vec<Element> = Vec::new();
    for s in seeds {
        for x in [s.clone(), id.try_sub(&s)?] {
            for y in orbit_of(group, &x)? {
                if !out.iter().any(|z| same_point(z, &y)) {
                    out.push(y);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::group_elements;

    #[test]
    fn closed_forms_are_idempotent() {
        for t in NsType::ALL {
            let e = build(t).unwrap();
            let (names, bad) = named_elements(&e).unwrap();
            let bad: Vec<&str> = bad.iter().map(|d| d.name.as_str()).collect();
            let expected: &[&str] = if t == NsType::A5 { &["y^{(3)}_{5A}"] } else { &[] };
            assert_eq!(bad, expected, "{t}");
            let g = group_elements(&e).unwrap();
            let k = known_idempotents(&e, &g).unwrap();
            eprintln!("{t}: {} named, {} known idempotents", names.len(), k.len());
        }
    }
}
