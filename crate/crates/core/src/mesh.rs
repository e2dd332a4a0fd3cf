//! Triangle meshes of the immersed annulus and of its Möbius-strip quotient,
//! a face-orientation test, and OBJ export.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::immersion::ImmersionData;

#[derive(Clone, Debug, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    /// Parameter-domain point of each vertex.
    pub params: Vec<Complex64>,
    pub faces: Vec<[usize; 3]>,
    /// `(kept, identified)` vertex pairs; faces only reference `kept`.
    pub quotient_pairs: Vec<(usize, usize)>,
    pub metadata: BTreeMap<String, String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientability {
    Orientable,
    Nonorientable,
    /// Some edge is shared by more than two faces.
    NonManifold,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeshSpec {
    pub n_r: usize,
    pub n_theta: usize,
    pub boundary_inset: f64,
    /// Mesh the fundamental domain `1 <= |z| <= ρ(1-inset)` with `z ~ -z`
    /// on the unit circle instead of the whole annulus.
    pub quotient: bool,
}

impl Default for MeshSpec {
    fn default() -> Self {
        Self {
            n_r: 64,
            n_theta: 256,
            boundary_inset: 0.02,
            quotient: true,
        }
    }
}

pub fn build_mesh(x: &ImmersionData, spec: &MeshSpec) -> Result<Mesh> {
    let MeshSpec {
        n_r,
        n_theta,
        boundary_inset,
        quotient,
    } = *spec;
    if n_r < 2 || n_theta < 8 || n_theta % 2 != 0 {
        return Err(Error::Parameter(format!(
            "mesh needs n_r >= 2 and even n_theta >= 8, got {n_r} x {n_theta}"
        )));
    }
    if !(0.0..1.0).contains(&boundary_inset) {
        return Err(Error::Parameter(format!("inset {boundary_inset} out of [0, 1)")));
    }
    let annulus = x.annulus();
    let outer = annulus.outer * (1.0 - boundary_inset);
    let inner = if quotient {
        1.0
    } else {
        annulus.inner * (1.0 + boundary_inset)
    };
    if !(inner < outer) {
        return Err(Error::Parameter("inset leaves an empty annulus".into()));
    }

    let mut vertices = Vec::with_capacity(n_r * n_theta);
    let mut params = Vec::with_capacity(n_r * n_theta);
    for i in 0..n_r {
        let r = inner + (outer - inner) * i as f64 / (n_r - 1) as f64;
        for j in 0..n_theta {
            let z = Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / n_theta as f64);
            params.push(z);
            vertices.push(x.position(z)?);
        }
    }

    let half = n_theta / 2;
    // on the unit circle -e^{iθ_j} = e^{iθ_{j+half}}
    let index = |i: usize, j: usize| -> usize {
        let j = j % n_theta;
        if quotient && i == 0 && j >= half {
            j - half
        } else {
            i * n_theta + j
        }
    };
    let mut faces = Vec::with_capacity(2 * (n_r - 1) * n_theta);
    for i in 0..n_r - 1 {
        for j in 0..n_theta {
            let (a, b) = (index(i, j), index(i, j + 1));
            let (c, d) = (index(i + 1, j + 1), index(i + 1, j));
            faces.push([a, b, c]);
            faces.push([a, c, d]);
        }
    }
    let quotient_pairs = if quotient {
        (0..half).map(|j| (j, j + half)).collect()
    } else {
        Vec::new()
    };

    let mut metadata = BTreeMap::new();
    metadata.insert("mode".into(), if quotient { "quotient" } else { "full" }.into());
    metadata.insert("n_r".into(), n_r.to_string());
    metadata.insert("n_theta".into(), n_theta.to_string());
    metadata.insert("boundary_inset".into(), boundary_inset.to_string());
    Ok(Mesh {
        vertices,
        params,
        faces,
        quotient_pairs,
        metadata,
    })
}

impl Mesh {
    /// Tries to orient every face consistently by breadth-first propagation
    /// across shared edges.
    pub fn orientability(&self) -> Orientability {
        orientability(&self.faces)
    }

    /// Largest `‖X(p) - X(q)‖` over the identified vertex pairs.
    pub fn quotient_gap(&self) -> f64 {
        self.quotient_pairs
            .iter()
            .map(|&(a, b)| crate::immersion::distance(&self.vertices[a], &self.vertices[b]))
            .fold(0.0, f64::max)
    }

    pub fn to_obj(&self) -> String {
        let mut header = self.metadata.clone();
        header.insert("vertices".into(), self.vertices.len().to_string());
        header.insert("faces".into(), self.faces.len().to_string());
        ObjContent {
            header,
            vertices: self.vertices.clone(),
            faces: self.faces.clone(),
        }
        .to_obj()
    }

    pub fn export_obj(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_obj())?;
        Ok(())
    }
}

pub fn orientability(faces: &[[usize; 3]]) -> Orientability {
    // undirected edge -> (face, edge traversed low→high)
    let mut edges: HashMap<(usize, usize), Vec<(usize, bool)>> = HashMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for e in 0..3 {
            let (a, b) = (f[e], f[(e + 1) % 3]);
            edges
                .entry((a.min(b), a.max(b)))
                .or_default()
                .push((fi, a < b));
        }
    }
    if edges.values().any(|v| v.len() > 2) {
        return Orientability::NonManifold;
    }
    let mut adjacency: Vec<Vec<(usize, bool)>> = vec![Vec::new(); faces.len()];
    for v in edges.values() {
        if let [(f, df), (g, dg)] = v[..] {
            // same traversal direction means one of the two must flip
            let flip = df == dg;
            adjacency[f].push((g, flip));
            adjacency[g].push((f, flip));
        }
    }
    let mut flipped: Vec<Option<bool>> = vec![None; faces.len()];
    for start in 0..faces.len() {
        if flipped[start].is_some() {
            continue;
        }
        flipped[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            let ff = flipped[f].expect("visited");
            for &(g, flip) in &adjacency[f] {
                let want = ff ^ flip;
                match flipped[g] {
                    None => {
                        flipped[g] = Some(want);
                        queue.push_back(g);
                    }
                    Some(have) if have != want => return Orientability::Nonorientable,
                    Some(_) => {}
                }
            }
        }
    }
    Orientability::Orientable
}

/// Parsed OBJ content: header key/values, vertices, zero-based faces.
#[derive(Clone, Debug, PartialEq)]
pub struct ObjContent {
    pub header: BTreeMap<String, String>,
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
}

impl ObjContent {
    /// Header comments in key order, then vertices with 17 significant
    /// digits, then one-based faces.
    pub fn to_obj(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.header {
            let _ = writeln!(out, "# {k}={v}");
        }
        for v in &self.vertices {
            let _ = writeln!(out, "v {:.16e} {:.16e} {:.16e}", v[0], v[1], v[2]);
        }
        for f in &self.faces {
            let _ = writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
        }
        out
    }
}

pub fn parse_obj(text: &str) -> Result<ObjContent> {
    let mut content = ObjContent {
        header: BTreeMap::new(),
        vertices: Vec::new(),
        faces: Vec::new(),
    };
    for (lineno, line) in text.lines().enumerate() {
        let bad = || Error::Parse(format!("line {}: {line:?}", lineno + 1));
        if let Some(rest) = line.strip_prefix("# ") {
            if let Some((k, v)) = rest.split_once('=') {
                content.header.insert(k.to_string(), v.to_string());
            }
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("v") => {
                let mut v = [0.0; 3];
                for slot in &mut v {
                    *slot = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                }
                content.vertices.push(v);
            }
            Some("f") => {
                let mut f = [0usize; 3];
                for slot in &mut f {
                    let i: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                    *slot = i.checked_sub(1).ok_or_else(bad)?;
                }
                content.faces.push(f);
            }
            None => {}
            Some(_) => return Err(bad()),
        }
    }
    Ok(content)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_triangle_pair_orientations() {
        assert_eq!(orientability(&[[0, 1, 2], [0, 2, 3]]), Orientability::Orientable);
        assert_eq!(orientability(&[[0, 1, 2], [0, 3, 2]]), Orientability::Orientable);
        assert_eq!(
            orientability(&[[0, 1, 2], [0, 1, 3], [0, 1, 4]]),
            Orientability::NonManifold
        );
    }

    #[test]
    fn classic_mobius_strip_is_nonorientable() {
        // strip of 4 quads whose last quad glues back with a twist:
        // top row 0..4, bottom row 5..9, then (4, 9) ~ (5, 0)
        let top = [0, 1, 2, 3, 4];
        let bottom = [5, 6, 7, 8, 9];
        let mut faces = Vec::new();
        for i in 0..4 {
            faces.push([top[i], top[i + 1], bottom[i + 1]]);
            faces.push([top[i], bottom[i + 1], bottom[i]]);
        }
        let (t4, b4) = (top[4], bottom[4]);
        faces.push([t4, bottom[0], top[0]]);
        faces.push([t4, top[0], b4]);
        // the same gluing without the twist is an annulus
        let mut annulus: Vec<[usize; 3]> = faces[..8].to_vec();
        annulus.push([t4, top[0], bottom[0]]);
        annulus.push([t4, bottom[0], b4]);
        assert_eq!(orientability(&faces), Orientability::Nonorientable);
        assert_eq!(orientability(&annulus), Orientability::Orientable);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_obj("v 1 2\n").is_err());
        assert!(parse_obj("f 0 1 2\n").is_err());
        assert!(parse_obj("x\n").is_err());
        let c = parse_obj("# k=v\nv 1 2 3\nf 1 1 1\n").unwrap();
        assert_eq!(c.header["k"], "v");
        assert_eq!(c.faces, vec![[0, 0, 0]]);
        assert_eq!(c.to_obj(), "# k=v\nv 1.0000000000000000e0 2.0000000000000000e0 3.0000000000000000e0\nf 1 1 1\n");
    }
}
