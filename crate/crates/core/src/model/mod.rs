//! Plane models of X_H(N): relation interpolation between two modular units,
//! genus certification, and the projection polynomials used to compute
//! fibers of the quotient map from X_1(N).

pub mod genus;
pub mod projection;
pub mod relation;

pub use relation::{find_relation, UnitExpr};

use crate::algebra::zpoly::Zxy;
use serde::{Deserialize, Serialize};

/// A plane model of X_H(N) produced by the unit-relation search.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PlaneModel {
    pub level: u32,
    pub h_generators: Vec<u64>,
    /// exponent vectors of the two units over f_2..f_{n+1}
    pub unit_x: Vec<i64>,
    pub unit_y: Vec<i64>,
    /// degrees of X and Y as functions on X_H
    pub d1: i64,
    pub d2: i64,
    /// the relation f_H, sparse monomials (coef, expX, expY)
    pub relation: Vec<(String, usize, usize)>,
    /// the four projection polynomials P_Xx, P_Xy, P_Yx, P_Yy (same encoding,
    /// variables (T, x) resp. (T, y))
    pub projections: Option<[Vec<(String, usize, usize)>; 4]>,
    pub genus: i64,
}

pub fn encode_zxy(f: &Zxy) -> Vec<(String, usize, usize)> {
    let mut out = vec![];
    for (j, cy) in f.iter().enumerate() {
        for (i, v) in cy.iter().enumerate() {
            if !num_traits::Zero::is_zero(v) {
                out.push((v.to_string(), i, j));
            }
        }
    }
    out
}

pub fn decode_zxy(entries: &[(String, usize, usize)]) -> crate::error::Result<Zxy> {
    use crate::algebra::zpoly;
    let mut f = zpoly::zxy_zero();
    for (c, i, j) in entries {
        let v: num_bigint::BigInt = c
            .parse()
            .map_err(|_| crate::error::Error::Validation("bad coefficient".into()))?;
        f = zpoly::zxy_add(&f, &zpoly::zxy_monomial(v, *i, *j));
    }
    Ok(f)
}

impl PlaneModel {
    pub fn relation_poly(&self) -> crate::error::Result<Zxy> {
        decode_zxy(&self.relation)
    }

    pub fn save(&self, path: &std::path::Path) -> crate::error::Result<()> {
        std::fs::write(path, serde_json::to_string(self)?)?;
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> crate::error::Result<PlaneModel> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}

use crate::error::{Error, Result};
use crate::units::{self, CuspBasisData};

/// A unit selection for one X_H model, as shipped in the data pack.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UnitSelection {
    pub level: u32,
    pub index: u32,
    pub h_generator: u64,
    pub unit_x: Vec<i64>,
    pub unit_y: Vec<i64>,
}

pub fn load_unit_selections(path: &std::path::Path) -> Result<Vec<UnitSelection>> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// The model search: pick two independent low-degree unit vectors (or use
/// the supplied pair), interpolate their relation, and certify it by the
/// genus comparison. Returns the certified model or the explicit
/// "no output" error.
pub fn build_model(
    data: &CuspBasisData,
    h_gens: &[u64],
    supplied_units: Option<(&[i64], &[i64])>,
    with_projections: bool,
) -> Result<PlaneModel> {
    data.validate()?;
    let level = data.level;
    let lat = units::invariant_sublattice(data, h_gens)?;
    let h = lat.h();
    let (ex, ey) = match supplied_units {
        Some((ex, ey)) => (ex.to_vec(), ey.to_vec()),
        None => {
            let (vx, vy, _, _) = units::select_low_degree_pair(&lat, data)?;
            (vx.exponents, vy.exponents)
        }
    };
    // divisors and degrees of the chosen units
    let div_of = |e: &[i64]| -> Vec<i64> {
        let n = data.n();
        let mut w = vec![0i64; n + 1];
        for (idx, &c) in e.iter().enumerate() {
            for i in 0..=n {
                w[i] += c * data.rows[idx][i];
            }
        }
        w
    };
    let dx = div_of(&ex);
    let dy = div_of(&ey);
    // both units must be H-invariant
    for &d in h_gens {
        if units::diamond_on_divisor(level, d, &dx)? != dx
            || units::diamond_on_divisor(level, d, &dy)? != dy
        {
            return Err(Error::Model("supplied units are not H-invariant".into()));
        }
    }
    let d1 = units::unit_degree(&dx, data, h)?;
    let d2 = units::unit_degree(&dy, data, h)?;
    let ux = UnitExpr {
        level,
        exponents: ex.clone(),
    };
    let uy = UnitExpr {
        level,
        exponents: ey.clone(),
    };
    let rel = find_relation(level, &ux, &uy, d1 as usize, d2 as usize)?;
    let g = genus::plane_genus(&rel)?;
    let gref = genus::genus_xh(level, h_gens)?;
    if g != gref {
        return Err(Error::Model(format!(
            "no output: interpolated relation has genus {g}, X_H has genus {gref}"
        )));
    }
    let projections = if with_projections {
        let fnxy = crate::tate::fn_poly::fn_in_xy(level)?;
        let (nx, dxp) = projection::unit_num_den(&ux)?;
        let (ny, dyp) = projection::unit_num_den(&uy)?;
        let pxx = projection::projection_exact(&fnxy, &nx, &dxp, false)?;
        let pxy = projection::projection_exact(&fnxy, &nx, &dxp, true)?;
        let pyx = projection::projection_exact(&fnxy, &ny, &dyp, false)?;
        let pyy = projection::projection_exact(&fnxy, &ny, &dyp, true)?;
        Some([
            encode_zxy(&pxx),
            encode_zxy(&pxy),
            encode_zxy(&pyx),
            encode_zxy(&pyy),
        ])
    } else {
        None
    };
    Ok(PlaneModel {
        level,
        h_generators: h_gens.to_vec(),
        unit_x: ex,
        unit_y: ey,
        d1,
        d2,
        relation: encode_zxy(&rel),
        projections,
        genus: g,
    })
}
