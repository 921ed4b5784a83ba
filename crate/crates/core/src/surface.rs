//! Ideal triangulations of punctured surfaces, flips and isometries.
//!
//! Triangles are triples of oriented edges read counterclockwise. The text
//! format is a bracketed list such as `[(~8, ~1, ~4), (~7, ~3, 2)]`, where
//! `~e` is edge `e` traversed backwards.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedEdge {
    pub index: usize,
    pub reversed: bool,
}

impl OrientedEdge {
    pub fn new(index: usize, reversed: bool) -> Self {
        Self { index, reversed }
    }

    pub fn forward(index: usize) -> Self {
        Self::new(index, false)
    }

    pub fn backward(index: usize) -> Self {
        Self::new(index, true)
    }

    /// The same edge with the opposite orientation.
    pub fn rev(self) -> Self {
        Self::new(self.index, !self.reversed)
    }

    /// +1 for a forward label, -1 for a reversed one.
    pub fn sign(self) -> i32 {
        if self.reversed {
            -1
        } else {
            1
        }
    }

    /// Integer key with `~e` encoded as `-e - 1`, used for canonical ordering.
    pub fn key(self) -> i64 {
        if self.reversed {
            -(self.index as i64) - 1
        } else {
            self.index as i64
        }
    }
}

impl fmt::Display for OrientedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reversed {
            write!(f, "~{}", self.index)
        } else {
            write!(f, "{}", self.index)
        }
    }
}

impl FromStr for OrientedEdge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (reversed, digits) = match s.strip_prefix('~') {
            Some(rest) => (true, rest.trim()),
            None => (false, s),
        };
        let index = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad oriented edge `{s}`")))?;
        Ok(Self::new(index, reversed))
    }
}

pub type Triangle = [OrientedEdge; 3];

/// Rotates `t` so that position `p` comes first.
pub fn rotate(t: &Triangle, p: usize) -> Triangle {
    [t[p % 3], t[(p + 1) % 3], t[(p + 2) % 3]]
}

/// A validated ideal triangulation with `2n` triangles and `3n` edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceTriangulation {
    triangles: Vec<Triangle>,
    num_edges: usize,
    num_punctures: usize,
}

/// What a single flip did, in terms of the triangulation it was applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlipRecord {
    pub edge: usize,
    /// Slot of the triangle `(e, a, b)`.
    pub slot_a: usize,
    /// Slot of the triangle `(~e, c, d)`.
    pub slot_b: usize,
    /// Position of `e` inside the stored triangle at `slot_a`.
    pub pos_a: usize,
    /// Position of `~e` inside the stored triangle at `slot_b`.
    pub pos_b: usize,
    pub a: OrientedEdge,
    pub b: OrientedEdge,
    pub c: OrientedEdge,
    pub d: OrientedEdge,
}

impl SurfaceTriangulation {
    pub fn new(triangles: Vec<Triangle>) -> Result<Self> {
        if triangles.is_empty() || !triangles.len().is_multiple_of(2) {
            return Err(Error::InvalidTriangulation(format!(
                "expected an even, nonzero number of triangles, got {}",
                triangles.len()
            )));
        }
        let num_edges = triangles.len() * 3 / 2;
        let mut seen = vec![[false; 2]; num_edges];
        for x in triangles.iter().flatten() {
            if x.index >= num_edges {
                return Err(Error::InvalidTriangulation(format!(
                    "edge {} out of range for {num_edges} edges",
                    x.index
                )));
            }
            let slot = &mut seen[x.index][usize::from(x.reversed)];
            if *slot {
                return Err(Error::InvalidTriangulation(format!("label {x} used twice")));
            }
            *slot = true;
        }
        if let Some(e) = seen.iter().position(|s| !(s[0] && s[1])) {
            return Err(Error::InvalidTriangulation(format!(
                "edge {e} must appear once in each orientation"
            )));
        }
        let mut out = Self {
            triangles,
            num_edges,
            num_punctures: 0,
        };
        out.num_punctures = out.vertex_classes().1;
        Ok(out)
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn num_punctures(&self) -> usize {
        self.num_punctures
    }

    /// `n = -χ`, so that there are `3n` edges and `2n` triangles.
    pub fn complexity(&self) -> usize {
        self.num_edges / 3
    }

    /// Genus of the closed surface obtained by filling the punctures.
    pub fn genus(&self) -> usize {
        // 2 - 2g - p = -n
        (2 + self.complexity() - self.num_punctures) / 2
    }

    /// Slot and position of an oriented label.
    pub fn locate(&self, x: OrientedEdge) -> Option<(usize, usize)> {
        self.triangles
            .iter()
            .enumerate()
            .find_map(|(i, t)| t.iter().position(|&y| y == x).map(|p| (i, p)))
    }

    /// Union-find over corners `(slot, position)`, where corner `k` of a
    /// triangle is the tail of its `k`-th side. Returns the class of every
    /// corner (flattened as `3·slot + position`) and the class count.
    fn vertex_classes(&self) -> (Vec<usize>, usize) {
        let m = self.triangles.len() * 3;
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut union = |a: usize, b: usize| {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        };
        for e in 0..self.num_edges {
            let (sa, pa) = self.locate(OrientedEdge::forward(e)).expect("validated");
            let (sb, pb) = self.locate(OrientedEdge::backward(e)).expect("validated");
            // tail(e) = head(~e) and head(e) = tail(~e)
            union(3 * sa + pa, 3 * sb + (pb + 1) % 3);
            union(3 * sa + (pa + 1) % 3, 3 * sb + pb);
        }
        let mut ids = vec![usize::MAX; m];
        let mut count = 0;
        let mut class = vec![0; m];
        for (x, slot) in class.iter_mut().enumerate() {
            let r = find(&mut parent, x);
            if ids[r] == usize::MAX {
                ids[r] = count;
                count += 1;
            }
            *slot = ids[r];
        }
        (class, count)
    }

    /// Puncture ids of the tail and head of every forward edge.
    pub fn edge_endpoints(&self) -> Vec<(usize, usize)> {
        let (class, _) = self.vertex_classes();
        (0..self.num_edges)
            .map(|e| {
                let (s, p) = self.locate(OrientedEdge::forward(e)).expect("validated");
                (class[3 * s + p], class[3 * s + (p + 1) % 3])
            })
            .collect()
    }

    /// Replaces the diagonal `e` of its quadrilateral by the other diagonal.
    ///
    /// With `(e, a, b)` and `(~e, c, d)` the two triangles at `e`, the result
    /// holds `(~e, d, a)` in the first slot and `(e, b, c)` in the second.
    pub fn apply_flip(&self, e: usize) -> Result<Self> {
        Ok(self.flip_with_record(e)?.0)
    }

    pub fn flip_with_record(&self, e: usize) -> Result<(Self, FlipRecord)> {
        if e >= self.num_edges {
            return Err(Error::NotFlippable(e));
        }
        let fwd = OrientedEdge::forward(e);
        let (slot_a, pos_a) = self.locate(fwd).ok_or(Error::NotFlippable(e))?;
        let (slot_b, pos_b) = self.locate(fwd.rev()).ok_or(Error::NotFlippable(e))?;
        if slot_a == slot_b {
            return Err(Error::NotFlippable(e));
        }
        let [_, a, b] = rotate(&self.triangles[slot_a], pos_a);
        let [_, c, d] = rotate(&self.triangles[slot_b], pos_b);
        let mut triangles = self.triangles.clone();
        triangles[slot_a] = [fwd.rev(), d, a];
        triangles[slot_b] = [fwd, b, c];
        let next = Self {
            triangles,
            num_edges: self.num_edges,
            num_punctures: self.num_punctures,
        };
        let record = FlipRecord {
            edge: e,
            slot_a,
            slot_b,
            pos_a,
            pos_b,
            a,
            b,
            c,
            d,
        };
        Ok((next, record))
    }

    /// Relabels every side through `iso`.
    pub fn apply_isometry(&self, iso: &Isometry) -> Result<Self> {
        if iso.len() != self.num_edges {
            return Err(Error::InvalidIsometry(format!(
                "isometry has {} entries for {} edges",
                iso.len(),
                self.num_edges
            )));
        }
        let triangles = self
            .triangles
            .iter()
            .map(|t| t.map(|x| iso.apply(x)))
            .collect();
        Self::new(triangles).map_err(|e| Error::InvalidIsometry(e.to_string()))
    }

    /// Each triangle rotated so its smallest key leads, triangles sorted by key.
    pub fn canonical(&self) -> Self {
        let mut triangles: Vec<Triangle> = self.triangles.iter().map(canonical_triangle).collect();
        triangles.sort_by_key(|t| t.map(OrientedEdge::key));
        Self {
            triangles,
            num_edges: self.num_edges,
            num_punctures: self.num_punctures,
        }
    }

    /// Equality up to rotating triangles and reordering them.
    pub fn same_triangles(&self, other: &Self) -> bool {
        self.canonical().triangles == other.canonical().triangles
    }
}

pub fn canonical_triangle(t: &Triangle) -> Triangle {
    let p = (0..3).min_by_key(|&i| t[i].key()).expect("three sides");
    rotate(t, p)
}

impl fmt::Display for SurfaceTriangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .triangles
            .iter()
            .map(|t| format!("({}, {}, {})", t[0], t[1], t[2]))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

fn strip_brackets(s: &str) -> Result<&str> {
    s.trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected a bracketed list, got `{}`", s.trim())))
}

/// Parses the bracketed triangle list format.
pub fn parse_surface(text: &str) -> Result<SurfaceTriangulation> {
    let body = strip_brackets(text)?;
    let mut triangles = Vec::new();
    let mut rest = body.trim();
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected `(` at `{rest}`")))?;
        let close = inner
            .find(')')
            .ok_or_else(|| Error::Parse("unclosed triangle".into()))?;
        let sides: Vec<OrientedEdge> = inner[..close]
            .split(',')
            .map(str::parse)
            .collect::<Result<_>>()?;
        let tri: Triangle = sides
            .try_into()
            .map_err(|_| Error::Parse(format!("triangle `({})` needs 3 sides", &inner[..close])))?;
        triangles.push(tri);
        rest = inner[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
        }
    }
    SurfaceTriangulation::new(triangles)
}

impl FromStr for SurfaceTriangulation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_surface(s)
    }
}

/// A relabeling of edges: edge `i` goes to `image[i]`, possibly reversed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isometry {
    image: Vec<OrientedEdge>,
}

impl Isometry {
    pub fn new(image: Vec<OrientedEdge>) -> Result<Self> {
        let mut hit = vec![false; image.len()];
        for x in &image {
            match hit.get_mut(x.index) {
                Some(h) if !*h => *h = true,
                _ => {
                    return Err(Error::InvalidIsometry(format!(
                        "{x} is out of range or repeated"
                    )))
                }
            }
        }
        Ok(Self { image })
    }

    pub fn identity(num_edges: usize) -> Self {
        Self {
            image: (0..num_edges).map(OrientedEdge::forward).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[OrientedEdge] {
        &self.image
    }

    pub fn apply(&self, x: OrientedEdge) -> OrientedEdge {
        let y = self.image[x.index];
        OrientedEdge::new(y.index, y.reversed ^ x.reversed)
    }

    pub fn inverse(&self) -> Self {
        let mut image = vec![OrientedEdge::forward(0); self.image.len()];
        for (i, y) in self.image.iter().enumerate() {
            image[y.index] = OrientedEdge::new(i, y.reversed);
        }
        Self { image }
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.image.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl FromStr for Isometry {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let body = strip_brackets(s)?;
        let image = body
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(str::parse)
            .collect::<Result<_>>()?;
        Self::new(image)
    }
}

/// A monodromy presented as an isometry followed by a flip sequence.
///
/// The layered stack starts at `isometry⁻¹(source)` in canonical form; the
/// flips, applied in order, must lead back to `source`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingClass {
    pub source: SurfaceTriangulation,
    pub isometry: Isometry,
    pub flips: Vec<usize>,
}

impl MappingClass {
    pub fn new(
        source: SurfaceTriangulation,
        isometry: Isometry,
        flips: Vec<usize>,
    ) -> Result<Self> {
        if isometry.len() != source.num_edges() {
            return Err(Error::InvalidIsometry(format!(
                "isometry has {} entries for {} edges",
                isometry.len(),
                source.num_edges()
            )));
        }
        Ok(Self {
            source,
            isometry,
            flips,
        })
    }

    /// The bottom triangulation of the layered stack.
    pub fn initial_triangulation(&self) -> Result<SurfaceTriangulation> {
        Ok(self
            .source
            .apply_isometry(&self.isometry.inverse())?
            .canonical())
    }

    /// Every triangulation along the flip path, starting with the initial one.
    pub fn path(&self) -> Result<Vec<SurfaceTriangulation>> {
        let mut out = vec![self.initial_triangulation()?];
        for &e in &self.flips {
            let next = out.last().expect("nonempty").apply_flip(e)?;
            out.push(next);
        }
        Ok(out)
    }

    /// Parses the three-line monodromy format:
    ///
    /// ```text
    /// triangulation: [(~8, ~1, ~4), ...]
    /// isometry: [1, 2, ..., ~0]
    /// flips: [8, 5, 7, 4]
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut source = None;
        let mut iso = None;
        let mut flips = None;
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `key: value`, got `{line}`")))?;
            match key.trim() {
                "triangulation" => source = Some(parse_surface(value)?),
                "isometry" => iso = Some(value.parse::<Isometry>()?),
                "flips" => {
                    let body = strip_brackets(value)?;
                    let list = body
                        .split(',')
                        .filter(|p| !p.trim().is_empty())
                        .map(|p| {
                            p.trim()
                                .parse::<usize>()
                                .map_err(|_| Error::Parse(format!("bad flip `{}`", p.trim())))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    flips = Some(list);
                }
                other => return Err(Error::Parse(format!("unknown monodromy key `{other}`"))),
            }
        }
        let source = source.ok_or_else(|| Error::Parse("missing `triangulation:`".into()))?;
        let iso = iso.ok_or_else(|| Error::Parse("missing `isometry:`".into()))?;
        let flips = flips.ok_or_else(|| Error::Parse("missing `flips:`".into()))?;
        Self::new(source, iso, flips)
    }
}

impl fmt::Display for MappingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flips: Vec<String> = self.flips.iter().map(ToString::to_string).collect();
        writeln!(f, "triangulation: {}", self.source)?;
        writeln!(f, "isometry: {}", self.isometry)?;
        writeln!(f, "flips: [{}]", flips.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SOURCE: &str = "[(~8,~1,~4),(~7,~3,2),(~6,~2,1),(~5,0,3),(~0,7,8),(4,5,6)]";

    #[test]
    fn parses_genus_two_fiber() {
        let s = parse_surface(SOURCE).unwrap();
        assert_eq!(s.num_triangles(), 6);
        assert_eq!(s.num_edges(), 9);
        assert_eq!(s.num_punctures(), 1);
        assert_eq!(s.genus(), 2);
    }

    #[test]
    fn punctured_torus() {
        let s = parse_surface("[(0,1,2),(~0,~1,~2)]").unwrap();
        assert_eq!(s.num_punctures(), 1);
        assert_eq!(s.genus(), 1);
        assert_eq!(s.edge_endpoints(), vec![(0, 0); 3]);
    }

    #[test]
    fn rejects_bad_edge_usage() {
        assert!(matches!(
            parse_surface("[(0,1,1)]"),
            Err(Error::InvalidTriangulation(_))
        ));
        assert!(matches!(
            parse_surface("[(0,1,2),(0,~1,~2)]"),
            Err(Error::InvalidTriangulation(_))
        ));
        assert!(matches!(parse_surface("(0,1,2)"), Err(Error::Parse(_))));
    }

    #[test]
    fn print_parse_round_trip() {
        let s = parse_surface(SOURCE).unwrap();
        assert_eq!(s.to_string().parse::<SurfaceTriangulation>().unwrap(), s);
    }

    #[test]
    fn flip_rewrites_the_quad() {
        let s = parse_surface("[(0,1,2),(~0,~1,~2)]").unwrap();
        let f = s.apply_flip(0).unwrap();
        // (0,1,2),(~0,~1,~2): a=1 b=2 c=~1 d=~2
        assert_eq!(f.to_string(), "[(~0, ~2, 1), (0, 2, ~1)]");
        assert!(matches!(s.apply_flip(7), Err(Error::NotFlippable(7))));
    }

    #[test]
    fn self_folded_edge_is_not_flippable() {
        // Edge 0 borders the same triangle on both sides.
        let s = parse_surface("[(0,~0,1),(~1,2,~2)]").unwrap();
        assert_eq!(s.apply_flip(0), Err(Error::NotFlippable(0)));
    }

    #[test]
    fn isometry_inverse() {
        let s = parse_surface(SOURCE).unwrap();
        let iso: Isometry = "[1, 2, 3, 4, 5, 6, 7, 8, ~0]".parse().unwrap();
        let back = s
            .apply_isometry(&iso)
            .unwrap()
            .apply_isometry(&iso.inverse())
            .unwrap();
        assert_eq!(back, s);
        assert_eq!(s.apply_isometry(&Isometry::identity(9)).unwrap(), s);
        assert!("[1, 1, 2]".parse::<Isometry>().is_err());
    }
}
