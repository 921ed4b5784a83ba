//! Layered ideal triangulations of mapping tori and their obstruction signs.
//!
//! Edge variables are numbered `0..3n` for the bottom triangulation and
//! `3n + i` for the top edge of layer `i` (0-based). Face variables are
//! `0..2n` for the bottom triangles and `2n + 2i`, `2n + 2i + 1` for the two
//! faces created by layer `i`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::surface::{canonical_triangle, MappingClass, OrientedEdge, SurfaceTriangulation};

/// A variable id with a sign, from `c(~e) = -c(e)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedVar {
    pub var: usize,
    pub sign: i32,
}

impl SignedVar {
    pub fn new(var: usize, sign: i32) -> Self {
        Self { var, sign }
    }
}

impl fmt::Display for SignedVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.sign < 0 { '-' } else { '+' }, self.var)
    }
}

impl FromStr for SignedVar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (sign, rest) = match s.as_bytes().first() {
            Some(b'-') => (-1, &s[1..]),
            Some(b'+') => (1, &s[1..]),
            _ => (1, s),
        };
        let var = rest
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad signed variable `{s}`")))?;
        Ok(Self { var, sign })
    }
}

/// One tetrahedron of the stack, attached by flipping `flip_edge`.
///
/// The flipped quad has sides `a, b` on the triangle containing the old
/// diagonal and `c, d` on the one containing its reverse. The equatorial
/// slots are `E1 = a`, `E2 = c`, `E3 = b`, `E4 = d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TetrahedronLayer {
    pub index: usize,
    pub flip_edge: usize,
    pub top: usize,
    pub bottom: usize,
    pub equatorial: [SignedVar; 4],
    /// `(e', b, c)` then `(~e', d, a)`.
    pub top_faces: [usize; 2],
    /// Faces of `(e, a, b)` and `(~e, c, d)`.
    pub bottom_faces: [usize; 2],
}

impl TetrahedronLayer {
    pub fn a(&self) -> SignedVar {
        self.equatorial[0]
    }
    pub fn c(&self) -> SignedVar {
        self.equatorial[1]
    }
    pub fn b(&self) -> SignedVar {
        self.equatorial[2]
    }
    pub fn d(&self) -> SignedVar {
        self.equatorial[3]
    }
}

/// Where the bottom variables reappear at the top of the stack.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureMap {
    pub edge_map: Vec<SignedVar>,
    pub face_map: Vec<SignedVar>,
}

/// Short-edge ids of the twelve corners of a layer's four faces.
///
/// Tetrahedron vertices: the bottom diagonal runs `P → Q`, the top diagonal
/// `S → R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayerCorners {
    pub a_p: usize,
    pub a_q: usize,
    pub a_r: usize,
    pub b_p: usize,
    pub b_q: usize,
    pub b_s: usize,
    pub n0_p: usize,
    pub n0_r: usize,
    pub n0_s: usize,
    pub n1_q: usize,
    pub n1_r: usize,
    pub n1_s: usize,
}

impl LayerCorners {
    /// The four cusp triangles, one per vertex.
    pub fn cusp_triangles(&self) -> [[usize; 3]; 4] {
        [
            [self.b_p, self.n0_p, self.a_p],
            [self.b_s, self.n0_s, self.n1_s],
            [self.b_q, self.a_q, self.n1_q],
            [self.a_r, self.n0_r, self.n1_r],
        ]
    }

    /// Short edges whose product gives each equation-level sign:
    /// Ptolemy `(ε1, ε3)` relative to `ε2`, then the four face signs.
    fn sign_supports(&self) -> [[usize; 4]; 2] {
        [
            [self.a_q, self.n1_r, self.n0_s, self.b_p],
            [self.a_r, self.n1_q, self.b_s, self.n0_p],
        ]
    }

    fn face_supports(&self) -> [[usize; 2]; 4] {
        [
            [self.n0_r, self.b_q],
            [self.b_p, self.n1_r],
            [self.n0_s, self.a_q],
            [self.n1_s, self.a_p],
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredTriangulation {
    pub base: SurfaceTriangulation,
    pub layers: Vec<TetrahedronLayer>,
    pub closure: ClosureMap,
    pub corners: Vec<LayerCorners>,
    pub num_short_edges: usize,
}

impl LayeredTriangulation {
    /// `n = -χ` of the fiber.
    pub fn n(&self) -> usize {
        self.base.complexity()
    }

    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn num_edge_vars(&self) -> usize {
        3 * self.n() + self.layers.len()
    }

    pub fn num_face_vars(&self) -> usize {
        2 * self.n() + 2 * self.layers.len()
    }

    pub fn ptolemy_equations(&self, obstruction: &ObstructionData) -> Vec<PtolemyEquation> {
        self.layers
            .iter()
            .zip(&obstruction.ptolemy)
            .map(|(l, s)| PtolemyEquation::new(l, *s))
            .collect()
    }

    /// The two face equations of every layer, in layer order.
    pub fn face_equations(&self, obstruction: &ObstructionData) -> Vec<FaceEquation> {
        self.layers
            .iter()
            .zip(&obstruction.faces)
            .flat_map(|(l, s)| FaceEquation::pair(l, *s))
            .collect()
    }

    /// Text dump, one line per layer followed by the closure maps.
    pub fn dump(&self, obstruction: &ObstructionData) -> String {
        let mut out = String::new();
        for (l, (p, f)) in self
            .layers
            .iter()
            .zip(obstruction.ptolemy.iter().zip(&obstruction.faces))
        {
            out.push_str(&format!(
                "layer {}: flip={} T={} B={} E=({},{},{},{}) faces=({},{}) bottom=({},{}) signs=({},{},{}) face_signs=({},{},{},{})\n",
                l.index + 1,
                l.flip_edge,
                l.top,
                l.bottom,
                l.equatorial[0],
                l.equatorial[1],
                l.equatorial[2],
                l.equatorial[3],
                l.top_faces[0],
                l.top_faces[1],
                l.bottom_faces[0],
                l.bottom_faces[1],
                p[0],
                p[1],
                p[2],
                f[0][0],
                f[0][1],
                f[1][0],
                f[1][1],
            ));
        }
        let join = |v: &[SignedVar]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        out.push_str(&format!(
            "closure edges: [{}]\n",
            join(&self.closure.edge_map)
        ));
        out.push_str(&format!(
            "closure faces: [{}]\n",
            join(&self.closure.face_map)
        ));
        out
    }
}

/// Reads the layer table, closure map and signs back from [`LayeredTriangulation::dump`].
/// Lines starting with `#` are ignored.
pub fn parse_dump(text: &str) -> Result<(Vec<TetrahedronLayer>, ClosureMap, ObstructionData)> {
    let mut layers = Vec::new();
    let mut ptolemy = Vec::new();
    let mut faces = Vec::new();
    let mut edge_map = None;
    let mut face_map = None;
    for line in text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
    {
        let (head, rest) = line
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("bad dump line `{line}`")))?;
        if let Some(idx) = head.strip_prefix("layer ") {
            let idx: usize = idx
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad layer index in `{line}`")))?;
            let field = |key: &str| -> Result<&str> {
                let start = rest
                    .find(&format!(" {key}="))
                    .ok_or_else(|| Error::Parse(format!("missing `{key}` in `{line}`")))?
                    + key.len()
                    + 2;
                let tail = &rest[start..];
                Ok(tail.split_whitespace().next().unwrap_or(""))
            };
            let num = |key: &str| -> Result<usize> {
                field(key)?
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad `{key}` in `{line}`")))
            };
            let e = signed_list(field("E")?)?;
            let tf = ints(field("faces")?)?;
            let bf = ints(field("bottom")?)?;
            let s = ints(field("signs")?)?;
            let fs = ints(field("face_signs")?)?;
            if e.len() != 4 || tf.len() != 2 || bf.len() != 2 || s.len() != 3 || fs.len() != 4 {
                return Err(Error::Parse(format!("wrong arity in `{line}`")));
            }
            layers.push(TetrahedronLayer {
                index: idx - 1,
                flip_edge: num("flip")?,
                top: num("T")?,
                bottom: num("B")?,
                equatorial: [e[0], e[1], e[2], e[3]],
                top_faces: [tf[0] as usize, tf[1] as usize],
                bottom_faces: [bf[0] as usize, bf[1] as usize],
            });
            ptolemy.push([s[0], s[1], s[2]]);
            faces.push([[fs[0], fs[1]], [fs[2], fs[3]]]);
        } else if head == "closure edges" {
            edge_map = Some(signed_list(rest)?);
        } else if head == "closure faces" {
            face_map = Some(signed_list(rest)?);
        } else {
            return Err(Error::Parse(format!("unknown dump line `{line}`")));
        }
    }
    let edge_map = edge_map.ok_or_else(|| Error::Parse("missing closure edges".into()))?;
    let face_map = face_map.ok_or_else(|| Error::Parse("missing closure faces".into()))?;
    let closure_faces = face_map.iter().map(|v| v.sign).collect();
    let trivial = ptolemy.iter().all(|s: &[i32; 3]| s.iter().all(|&x| x == 1))
        && faces
            .iter()
            .all(|f: &[[i32; 2]; 2]| f.iter().flatten().all(|&x| x == 1));
    let obstruction = ObstructionData {
        mode: if trivial {
            ObstructionMode::Trivial
        } else {
            ObstructionMode::EquationSigns
        },
        ptolemy,
        faces,
        closure_faces,
    };
    Ok((layers, ClosureMap { edge_map, face_map }, obstruction))
}

fn strip_delims(s: &str) -> String {
    s.chars().filter(|c| !"()[] ".contains(*c)).collect()
}

fn ints(s: &str) -> Result<Vec<i32>> {
    strip_delims(s)
        .split(',')
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse()
                .map_err(|_| Error::Parse(format!("bad integer `{p}`")))
        })
        .collect()
}

fn signed_list(s: &str) -> Result<Vec<SignedVar>> {
    strip_delims(s)
        .split(',')
        .filter(|p| !p.is_empty())
        .map(str::parse)
        .collect()
}

/// Builds the layered triangulation of the mapping torus of `phi`.
pub fn build_layered(phi: &MappingClass) -> Result<LayeredTriangulation> {
    if phi.flips.is_empty() {
        return Err(Error::ClosureMismatch("the flip sequence is empty".into()));
    }
    let base = phi.initial_triangulation()?;
    let n = base.complexity();
    let num_faces = 2 * n + 2 * phi.flips.len();
    let mut tri = base.clone();
    let mut edge_var: Vec<usize> = (0..3 * n).collect();
    let mut slot_face: Vec<usize> = (0..2 * n).collect();
    let mut layers = Vec::new();
    // Corners as (face, position); position k is the tail of side k.
    let mut raw_corners = Vec::new();

    for (i, &e) in phi.flips.iter().enumerate() {
        let (next, r) = tri.flip_with_record(e)?;
        let sv = |x: OrientedEdge| SignedVar::new(edge_var[x.index], x.sign());
        let (fa, fb) = (slot_face[r.slot_a], slot_face[r.slot_b]);
        let (n0, n1) = (2 * n + 2 * i, 2 * n + 2 * i + 1);
        layers.push(TetrahedronLayer {
            index: i,
            flip_edge: e,
            top: 3 * n + i,
            bottom: edge_var[e],
            equatorial: [sv(r.a), sv(r.c), sv(r.b), sv(r.d)],
            top_faces: [n0, n1],
            bottom_faces: [fa, fb],
        });
        let at = |f: usize, p: usize| 3 * f + p % 3;
        raw_corners.push(LayerCorners {
            a_p: at(fa, r.pos_a),
            a_q: at(fa, r.pos_a + 1),
            a_r: at(fa, r.pos_a + 2),
            b_q: at(fb, r.pos_b),
            b_p: at(fb, r.pos_b + 1),
            b_s: at(fb, r.pos_b + 2),
            n0_s: at(n0, 0),
            n0_r: at(n0, 1),
            n0_p: at(n0, 2),
            n1_r: at(n1, 0),
            n1_s: at(n1, 1),
            n1_q: at(n1, 2),
        });
        slot_face[r.slot_a] = n1;
        slot_face[r.slot_b] = n0;
        edge_var[e] = 3 * n + i;
        tri = next;
    }

    if !tri.same_triangles(&phi.source) {
        return Err(Error::ClosureMismatch(format!(
            "flips end at {tri}, expected {}",
            phi.source
        )));
    }

    let edge_map = (0..3 * n)
        .map(|j| {
            let img = phi.isometry.apply(OrientedEdge::forward(j));
            SignedVar::new(edge_var[img.index], img.sign())
        })
        .collect();

    // Corner identification across the closure.
    let mut parent: Vec<usize> = (0..3 * num_faces).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut face_map = Vec::with_capacity(2 * n);
    for (j, t) in base.triangles().iter().enumerate() {
        let img = t.map(|x| phi.isometry.apply(x));
        let target = canonical_triangle(&img);
        let slot = tri
            .triangles()
            .iter()
            .position(|u| canonical_triangle(u) == target)
            .ok_or_else(|| Error::ClosureMismatch(format!("no image for triangle {j}")))?;
        let f = slot_face[slot];
        let u = tri.triangles()[slot];
        for (k, x) in img.iter().enumerate() {
            let m = u
                .iter()
                .position(|y| y == x)
                .expect("same triangle up to rotation");
            let (ra, rb) = (find(&mut parent, 3 * j + k), find(&mut parent, 3 * f + m));
            parent[ra] = rb;
        }
        face_map.push(SignedVar::new(f, 1));
    }
    let mut ids = vec![usize::MAX; 3 * num_faces];
    let mut num_short_edges = 0;
    let mut short = |parent: &mut Vec<usize>, x: usize| {
        let r = find(parent, x);
        if ids[r] == usize::MAX {
            ids[r] = num_short_edges;
            num_short_edges += 1;
        }
        ids[r]
    };
    let corners = raw_corners
        .iter()
        .map(|c| LayerCorners {
            a_p: short(&mut parent, c.a_p),
            a_q: short(&mut parent, c.a_q),
            a_r: short(&mut parent, c.a_r),
            b_p: short(&mut parent, c.b_p),
            b_q: short(&mut parent, c.b_q),
            b_s: short(&mut parent, c.b_s),
            n0_p: short(&mut parent, c.n0_p),
            n0_r: short(&mut parent, c.n0_r),
            n0_s: short(&mut parent, c.n0_s),
            n1_q: short(&mut parent, c.n1_q),
            n1_r: short(&mut parent, c.n1_r),
            n1_s: short(&mut parent, c.n1_s),
        })
        .collect();

    Ok(LayeredTriangulation {
        base,
        layers,
        closure: ClosureMap { edge_map, face_map },
        corners,
        num_short_edges,
    })
}

/// `ε1·c_T·c_B − ε2·c_{E1}·c_{E2} + ε3·c_{E3}·c_{E4} = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PtolemyEquation {
    /// Each monomial as `(coefficient sign, first var, second var)`.
    pub monomials: [(i32, usize, usize); 3],
}

impl PtolemyEquation {
    pub fn new(l: &TetrahedronLayer, s: [i32; 3]) -> Self {
        let [a, c, b, d] = l.equatorial;
        Self {
            monomials: [
                (s[0], l.top, l.bottom),
                (-s[1] * a.sign * c.sign, a.var, c.var),
                (s[2] * b.sign * d.sign, b.var, d.var),
            ],
        }
    }
}

/// Writes `(sign, name)` terms as `x - y + z`.
fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i32, String)>,
) -> fmt::Result {
    for (k, (s, body)) in terms.enumerate() {
        match (k, s < 0) {
            (0, true) => write!(f, "-{body}")?,
            (0, false) => write!(f, "{body}")?,
            (_, true) => write!(f, " - {body}")?,
            (_, false) => write!(f, " + {body}")?,
        }
    }
    Ok(())
}

impl fmt::Display for PtolemyEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.monomials
                .iter()
                .map(|&(s, x, y)| (s, format!("c{x}*c{y}"))),
        )?;
        write!(f, " = 0")
    }
}

/// A linear equation `Σ ± c_e·θ_f = 0` in the face variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceEquation {
    /// Each term as `(coefficient sign, edge var, face var)`.
    pub terms: [(i32, usize, usize); 3],
}

impl FaceEquation {
    /// The equations solved for the two new faces of `l`:
    ///
    /// `c_T·θ_{n1} + s·c_b·θ_α + s·c_c·θ_β = 0` and
    /// `−c_T·θ_{n0} + s·c_a·θ_α + s·c_d·θ_β = 0`.
    pub fn pair(l: &TetrahedronLayer, s: [[i32; 2]; 2]) -> [Self; 2] {
        let [n0, n1] = l.top_faces;
        let [fa, fb] = l.bottom_faces;
        let (a, b, c, d) = (l.a(), l.b(), l.c(), l.d());
        [
            Self {
                terms: [
                    (1, l.top, n1),
                    (s[0][0] * b.sign, b.var, fa),
                    (s[0][1] * c.sign, c.var, fb),
                ],
            },
            Self {
                terms: [
                    (-1, l.top, n0),
                    (s[1][0] * a.sign, a.var, fa),
                    (s[1][1] * d.sign, d.var, fb),
                ],
            },
        ]
    }
}

impl fmt::Display for FaceEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms
                .iter()
                .map(|&(s, e, t)| (s, format!("c{e}*θ{t}"))),
        )?;
        write!(f, " = 0")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObstructionMode {
    Trivial,
    EquationSigns,
}

/// Equation-level signs of a boundary obstruction class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionData {
    pub mode: ObstructionMode,
    /// `(ε1, ε2, ε3)` per layer.
    pub ptolemy: Vec<[i32; 3]>,
    /// Signs of the `θ_α`, `θ_β` terms of the two face equations per layer.
    pub faces: Vec<[[i32; 2]; 2]>,
    pub closure_faces: Vec<i32>,
}

impl ObstructionData {
    pub fn trivial(l: &LayeredTriangulation) -> Self {
        Self {
            mode: ObstructionMode::Trivial,
            ptolemy: vec![[1; 3]; l.num_layers()],
            faces: vec![[[1; 2]; 2]; l.num_layers()],
            closure_faces: vec![1; 2 * l.n()],
        }
    }

    pub fn from_signs(
        ptolemy: Vec<[i32; 3]>,
        faces: Vec<[[i32; 2]; 2]>,
        closure_faces: Vec<i32>,
    ) -> Result<Self> {
        let all = ptolemy
            .iter()
            .flatten()
            .chain(faces.iter().flatten().flatten())
            .chain(&closure_faces);
        let mut trivial = true;
        for &s in all {
            if s != 1 && s != -1 {
                return Err(Error::Parse(format!("sign {s} is not ±1")));
            }
            trivial &= s == 1;
        }
        if ptolemy.len() != faces.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} Ptolemy sign triples but {} face sign pairs",
                ptolemy.len(),
                faces.len()
            )));
        }
        Ok(Self {
            mode: if trivial {
                ObstructionMode::Trivial
            } else {
                ObstructionMode::EquationSigns
            },
            ptolemy,
            faces,
            closure_faces,
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.mode == ObstructionMode::Trivial
    }

    /// Checks the sign lists against the shape of `l`.
    pub fn check_shape(&self, l: &LayeredTriangulation) -> Result<()> {
        if self.ptolemy.len() != l.num_layers()
            || self.faces.len() != l.num_layers()
            || self.closure_faces.len() != 2 * l.n()
        {
            return Err(Error::DimensionMismatch(format!(
                "obstruction data sized for {} layers and {} faces, triangulation has {} and {}",
                self.ptolemy.len(),
                self.closure_faces.len(),
                l.num_layers(),
                2 * l.n()
            )));
        }
        Ok(())
    }

    /// Sign-file text:
    ///
    /// ```text
    /// ptolemy: [(1,-1,1), ...]
    /// faces: [((-1,-1),(1,-1)), ...]
    /// closure_faces: [1, 1, ...]
    /// ```
    pub fn to_text(&self) -> String {
        let p: Vec<String> = self
            .ptolemy
            .iter()
            .map(|s| format!("({},{},{})", s[0], s[1], s[2]))
            .collect();
        let f: Vec<String> = self
            .faces
            .iter()
            .map(|s| format!("(({},{}),({},{}))", s[0][0], s[0][1], s[1][0], s[1][1]))
            .collect();
        let c: Vec<String> = self.closure_faces.iter().map(ToString::to_string).collect();
        format!(
            "ptolemy: [{}]\nfaces: [{}]\nclosure_faces: [{}]\n",
            p.join(", "),
            f.join(", "),
            c.join(", ")
        )
    }

    /// Parses either a sign file (see [`ObstructionData::to_text`]) or a
    /// cocycle file with a single `cocycle: [±1, ...]` line.
    pub fn parse(text: &str, l: &LayeredTriangulation) -> Result<Self> {
        let mut ptolemy = None;
        let mut faces = None;
        let mut closure = None;
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `key: value`, got `{line}`")))?;
            match key.trim() {
                "cocycle" => {
                    let sigma = ShortEdgeCocycle::new(ints(value)?);
                    return cocycle_to_equation_signs(&sigma, l);
                }
                "ptolemy" => ptolemy = Some(ints(value)?),
                "faces" => faces = Some(ints(value)?),
                "closure_faces" => closure = Some(ints(value)?),
                other => return Err(Error::Parse(format!("unknown obstruction key `{other}`"))),
            }
        }
        let p = ptolemy.ok_or_else(|| Error::Parse("missing `ptolemy:`".into()))?;
        let f = faces.ok_or_else(|| Error::Parse("missing `faces:`".into()))?;
        if p.len() % 3 != 0 || f.len() % 4 != 0 {
            return Err(Error::Parse("sign lists have the wrong arity".into()));
        }
        let data = Self::from_signs(
            p.chunks(3).map(|c| [c[0], c[1], c[2]]).collect(),
            f.chunks(4).map(|c| [[c[0], c[1]], [c[2], c[3]]]).collect(),
            closure.unwrap_or_else(|| vec![1; 2 * l.n()]),
        )?;
        data.check_shape(l)?;
        Ok(data)
    }
}

/// A `±1` label on every short edge of the truncated triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortEdgeCocycle {
    pub signs: Vec<i32>,
}

impl ShortEdgeCocycle {
    pub fn new(signs: Vec<i32>) -> Self {
        Self { signs }
    }

    pub fn trivial(l: &LayeredTriangulation) -> Self {
        Self::new(vec![1; l.num_short_edges])
    }

    /// Checks length, `±1` entries and the cusp-triangle product condition.
    pub fn validate(&self, l: &LayeredTriangulation) -> Result<()> {
        if self.signs.len() != l.num_short_edges {
            return Err(Error::InvalidCocycle(format!(
                "{} signs for {} short edges",
                self.signs.len(),
                l.num_short_edges
            )));
        }
        if let Some(s) = self.signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::InvalidCocycle(format!("sign {s} is not ±1")));
        }
        for (i, c) in l.corners.iter().enumerate() {
            for tri in c.cusp_triangles() {
                if tri.iter().map(|&k| self.signs[k]).product::<i32>() != 1 {
                    return Err(Error::InvalidCocycle(format!(
                        "cusp triangle {tri:?} of layer {} has product -1",
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Every valid cocycle on `l`, as a basis of the GF(2) solution space.
    pub fn basis(l: &LayeredTriangulation) -> Vec<Self> {
        let rows: Vec<Vec<bool>> = l
            .corners
            .iter()
            .flat_map(|c| c.cusp_triangles())
            .map(|tri| support_row(l.num_short_edges, &tri))
            .collect();
        gf2_nullspace(rows, l.num_short_edges)
            .into_iter()
            .map(|v| Self::new(v.iter().map(|&b| if b { -1 } else { 1 }).collect()))
            .collect()
    }
}

/// Converts a short-edge cocycle to the signs it puts on every equation.
pub fn cocycle_to_equation_signs(
    sigma: &ShortEdgeCocycle,
    l: &LayeredTriangulation,
) -> Result<ObstructionData> {
    sigma.validate(l)?;
    let prod = |ks: &[usize]| ks.iter().map(|&k| sigma.signs[k]).product::<i32>();
    let mut ptolemy = Vec::new();
    let mut faces = Vec::new();
    for c in &l.corners {
        let [s1, s3] = c.sign_supports();
        ptolemy.push([prod(&s1), 1, prod(&s3)]);
        let f = c.face_supports();
        faces.push([[prod(&f[0]), prod(&f[1])], [prod(&f[2]), prod(&f[3])]]);
    }
    ObstructionData::from_signs(ptolemy, faces, vec![1; 2 * l.n()])
}

fn support_row(width: usize, support: &[usize]) -> Vec<bool> {
    let mut row = vec![false; width];
    for &k in support {
        row[k] ^= true;
    }
    row
}

/// A cocycle realizing `data`, if one exists.
///
/// Each Ptolemy triple is only determined up to an overall sign, so it is
/// compared through the ratios `ε1/ε2` and `ε3/ε2`.
pub fn realize_obstruction(
    data: &ObstructionData,
    l: &LayeredTriangulation,
) -> Option<ShortEdgeCocycle> {
    if data.check_shape(l).is_err() || data.closure_faces.iter().any(|&s| s != 1) {
        return None;
    }
    let w = l.num_short_edges;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for c in &l.corners {
        for tri in c.cusp_triangles() {
            rows.push(support_row(w, &tri));
            rhs.push(false);
        }
    }
    for ((c, p), f) in l.corners.iter().zip(&data.ptolemy).zip(&data.faces) {
        let [s1, s3] = c.sign_supports();
        rows.push(support_row(w, &s1));
        rhs.push(p[0] * p[1] < 0);
        rows.push(support_row(w, &s3));
        rhs.push(p[2] * p[1] < 0);
        for (support, s) in c.face_supports().iter().zip(f.iter().flatten()) {
            rows.push(support_row(w, support));
            rhs.push(*s < 0);
        }
    }
    gf2_solve(rows, rhs, w)
        .map(|x| ShortEdgeCocycle::new(x.iter().map(|&b| if b { -1 } else { 1 }).collect()))
}

/// True iff the equation-level signs come from some short-edge cocycle,
/// which in particular makes the signs on shared faces agree.
pub fn validate_obstruction(data: &ObstructionData, l: &LayeredTriangulation) -> bool {
    realize_obstruction(data, l).is_some()
}

/// Reduces `rows | rhs` to row echelon form; returns pivot columns.
fn gf2_eliminate(rows: &mut [Vec<bool>], rhs: &mut [bool], width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col]) else {
            continue;
        };
        rows.swap(r, p);
        rhs.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][col] {
                let (pivot_row, pivot_rhs) = (rows[r].clone(), rhs[r]);
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x ^= *y;
                }
                rhs[i] ^= pivot_rhs;
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

fn gf2_solve(mut rows: Vec<Vec<bool>>, mut rhs: Vec<bool>, width: usize) -> Option<Vec<bool>> {
    let pivots = gf2_eliminate(&mut rows, &mut rhs, width);
    if rhs[pivots.len()..].iter().any(|&b| b) {
        return None;
    }
    let mut x = vec![false; width];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = rhs[i];
    }
    Some(x)
}

fn gf2_nullspace(mut rows: Vec<Vec<bool>>, width: usize) -> Vec<Vec<bool>> {
    let mut rhs = vec![false; rows.len()];
    let pivots = gf2_eliminate(&mut rows, &mut rhs, width);
    (0..width)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![false; width];
            v[free] = true;
            for (i, &col) in pivots.iter().enumerate() {
                v[col] = rows[i][free];
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_var_text() {
        assert_eq!(SignedVar::new(0, -1).to_string(), "-0");
        assert_eq!("-0".parse::<SignedVar>().unwrap(), SignedVar::new(0, -1));
        assert_eq!("+12".parse::<SignedVar>().unwrap(), SignedVar::new(12, 1));
        assert!("x".parse::<SignedVar>().is_err());
    }

    #[test]
    fn gf2_helpers() {
        // x0 + x1 = 1, x1 + x2 = 0
        let rows = vec![vec![true, true, false], vec![false, true, true]];
        let x = gf2_solve(rows.clone(), vec![true, false], 3).unwrap();
        assert!(x[0] ^ x[1]);
        assert!(!(x[1] ^ x[2]));
        assert_eq!(gf2_nullspace(rows.clone(), 3).len(), 1);
        let mut bad = rows;
        bad.push(vec![true, false, true]);
        assert!(gf2_solve(bad, vec![true, false, false], 3).is_none());
    }

    #[test]
    fn empty_flip_sequence_is_rejected() {
        let phi = MappingClass::parse(
            "triangulation: [(0,1,2),(~0,~1,~2)]\nisometry: [0, 1, 2]\nflips: []",
        )
        .unwrap();
        assert!(matches!(
            build_layered(&phi),
            Err(Error::ClosureMismatch(_))
        ));
    }

    #[test]
    fn inconsistent_single_flip_is_rejected() {
        // One flip on the punctured torus cannot return to the source under
        // the identity isometry.
        let phi = MappingClass::parse(
            "triangulation: [(0,1,2),(~0,~1,~2)]\nisometry: [0, 1, 2]\nflips: [0]",
        )
        .unwrap();
        assert!(matches!(
            build_layered(&phi),
            Err(Error::ClosureMismatch(_))
        ));
    }
}
