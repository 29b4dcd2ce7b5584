//! Containers `S ◁ P`, their morphisms, composition, and the extension
//! functor on finite sets.
//!
//! A container is a list of shapes with a position count per shape. A
//! fueled container stands for a countable one and lists only the shapes
//! up to its fuel; anything that needs a shape beyond that is deferred by
//! the callers, never guessed.

use crate::error::{Error, Result};
use crate::kernel::{rank_uniform, DepTable, FamilySpace};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Container {
    labels: Vec<String>,
    positions: Vec<u32>,
    fuel: Option<u32>,
}

impl Container {
    pub fn finite(labels: Vec<String>, positions: Vec<u32>) -> Result<Self> {
        if labels.len() != positions.len() {
            return Err(Error::invalid(
                "positions",
                format!("{} counts for {} shapes", positions.len(), labels.len()),
            ));
        }
        Ok(Container {
            labels,
            positions,
            fuel: None,
        })
    }

    /// A countable container truncated to the shapes listed; `fuel` is the
    /// bound that produced them.
    pub fn fueled(labels: Vec<String>, positions: Vec<u32>, fuel: u32) -> Result<Self> {
        let mut c = Container::finite(labels, positions)?;
        c.fuel = Some(fuel);
        Ok(c)
    }

    /// Shapes labelled `0..n` with the given position counts.
    pub fn from_counts(positions: Vec<u32>) -> Self {
        let labels = (0..positions.len()).map(|i| i.to_string()).collect();
        Container {
            labels,
            positions,
            fuel: None,
        }
    }

    pub fn shape_count(&self) -> u32 {
        self.positions.len() as u32
    }

    pub fn pos(&self, s: u32) -> u32 {
        self.positions[s as usize]
    }

    pub fn positions(&self) -> &[u32] {
        &self.positions
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, s: u32) -> &str {
        &self.labels[s as usize]
    }

    pub fn fuel(&self) -> Option<u32> {
        self.fuel
    }

    pub fn is_finite(&self) -> bool {
        self.fuel.is_none()
    }

    pub fn max_positions(&self) -> u32 {
        self.positions.iter().copied().max().unwrap_or(0)
    }

    /// Families `f : P s -> Fin radix` indexed by `(s, rank f)`.
    pub fn families(&self, radix: u32) -> Result<FamilySpace> {
        Ok(FamilySpace::new(&self.positions, radix)?)
    }

    /// `|⟦C⟧ X|` restricted to the listed shapes, saturating.
    pub fn extension_size(&self, x: u32) -> u128 {
        self.positions
            .iter()
            .map(|&p| u128::from(x).saturating_pow(p))
            .fold(0u128, |a, b| a.saturating_add(b))
    }

    pub fn render_family(&self, f: &[u32]) -> String {
        let parts: Vec<&str> = f.iter().map(|&s| self.label(s)).collect();
        format!("[{}]", parts.join(","))
    }
}

/// An element `(s, fill)` of `⟦C⟧ X`; `fill` maps positions of `s` into X.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElement {
    pub shape: u32,
    pub fill: Vec<u32>,
}

impl ExtElement {
    pub fn validate(&self, c: &Container, x: u32) -> Result<()> {
        if self.shape >= c.shape_count() {
            return Err(Error::invalid(
                "shape",
                format!("{} out of range ({} shapes)", self.shape, c.shape_count()),
            ));
        }
        let want = c.pos(self.shape) as usize;
        if self.fill.len() != want {
            return Err(Error::invalid(
                "fill",
                format!("{} entries for {} positions", self.fill.len(), want),
            ));
        }
        if let Some(i) = self.fill.iter().position(|&v| v >= x) {
            return Err(Error::invalid(
                format!("fill[{i}]"),
                format!("{} is not below {}", self.fill[i], x),
            ));
        }
        Ok(())
    }
}

/// Every element of `⟦C⟧ X`, ordered by shape then fill.
pub fn extension_elements(c: &Container, x: u32) -> Vec<ExtElement> {
    let mut out = Vec::new();
    for s in 0..c.shape_count() {
        let sizes = vec![x; c.pos(s) as usize];
        for fill in crate::kernel::DepMaps::new(&sizes) {
            out.push(ExtElement { shape: s, fill });
        }
    }
    out
}

/// Functor action: `(s, fill) ↦ (s, h ∘ fill)`. `h` is a table `X -> Y`.
pub fn ext_map(c: &Container, h: &DepTable, e: &ExtElement) -> Result<ExtElement> {
    e.validate(c, h.len() as u32)?;
    Ok(ExtElement {
        shape: e.shape,
        fill: e.fill.iter().map(|&v| h.get(v as usize)).collect(),
    })
}

/// A container morphism `u ◁ f`: shapes forward, positions backward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainerMorphism {
    source: Container,
    target: Container,
    shape_map: Vec<u32>,
    position_maps: Vec<DepTable>,
}

impl ContainerMorphism {
    /// `position_maps[s]` maps positions of `shape_map[s]` in the target to
    /// positions of `s` in the source.
    pub fn new(
        source: Container,
        target: Container,
        shape_map: Vec<u32>,
        position_maps: Vec<Vec<u32>>,
    ) -> Result<Self> {
        if shape_map.len() != source.shape_count() as usize {
            return Err(Error::invalid("shape_map", "length differs from source shapes"));
        }
        if position_maps.len() != shape_map.len() {
            return Err(Error::invalid("position_maps", "one map per source shape"));
        }
        let mut tables = Vec::with_capacity(position_maps.len());
        for (s, (&u, f)) in shape_map.iter().zip(position_maps).enumerate() {
            if u >= target.shape_count() {
                return Err(Error::invalid(format!("shape_map[{s}]"), "not a target shape"));
            }
            if f.len() != target.pos(u) as usize {
                return Err(Error::invalid(
                    format!("position_maps[{s}]"),
                    "length differs from target positions",
                ));
            }
            let t = DepTable::uniform(source.pos(s as u32), f)
                .map_err(|e| Error::invalid(format!("position_maps[{s}]"), e.to_string()))?;
            tables.push(t);
        }
        Ok(ContainerMorphism {
            source,
            target,
            shape_map,
            position_maps: tables,
        })
    }

    pub fn identity(c: &Container) -> Self {
        let shape_map = (0..c.shape_count()).collect();
        let maps = (0..c.shape_count())
            .map(|s| (0..c.pos(s)).collect())
            .collect();
        ContainerMorphism::new(c.clone(), c.clone(), shape_map, maps).expect("identity is valid")
    }

    pub fn source(&self) -> &Container {
        &self.source
    }

    pub fn target(&self) -> &Container {
        &self.target
    }

    pub fn shape_map(&self) -> &[u32] {
        &self.shape_map
    }

    pub fn position_map(&self, s: u32) -> &DepTable {
        &self.position_maps[s as usize]
    }
}

/// `⟦u ◁ f⟧ (s, g) = (u s, g ∘ f_s)`.
pub fn interpret_morphism(m: &ContainerMorphism, e: &ExtElement) -> Result<ExtElement> {
    e.validate(&m.source, u32::MAX)?;
    let f = m.position_map(e.shape);
    Ok(ExtElement {
        shape: m.shape_map[e.shape as usize],
        fill: f.entries().iter().map(|&p| e.fill[p as usize]).collect(),
    })
}

/// The composite container `outer ∘ inner`: shapes `(o, g)` with
/// `g : P_outer o -> inner shapes`, positions `Σ_{q} P_inner (g q)`.
///
/// Composite shape indices run over `o` then the rank of `g`; positions of
/// `(o, g)` are ordered by `q` then by the inner position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composite {
    container: Container,
    outer: Container,
    inner: Container,
    families: FamilySpace,
    decoded: Vec<(u32, Vec<u32>)>,
    pos_offsets: Vec<Vec<u32>>,
}

pub fn compose_containers(outer: &Container, inner: &Container) -> Result<Composite> {
    if !outer.is_finite() {
        return Err(Error::Unsupported(
            "composite with a fueled outer container".into(),
        ));
    }
    let families = outer.families(inner.shape_count())?;
    if families.total() > u64::from(u32::MAX) {
        return Err(Error::Unsupported("composite has too many shapes".into()));
    }
    let mut labels = Vec::new();
    let mut positions = Vec::new();
    let mut decoded = Vec::new();
    let mut pos_offsets = Vec::new();
    for i in 0..families.total() {
        let (o, g) = families.decode(i);
        let mut offs = Vec::with_capacity(g.len() + 1);
        let mut acc = 0u32;
        for &t in &g {
            offs.push(acc);
            acc += inner.pos(t);
        }
        offs.push(acc);
        labels.push(format!("({},{})", outer.label(o), inner.render_family(&g)));
        positions.push(acc);
        decoded.push((o, g));
        pos_offsets.push(offs);
    }
    let container = match inner.fuel() {
        Some(fuel) => Container::fueled(labels, positions, fuel)?,
        None => Container::finite(labels, positions)?,
    };
    Ok(Composite {
        container,
        outer: outer.clone(),
        inner: inner.clone(),
        families,
        decoded,
        pos_offsets,
    })
}

impl Composite {
    pub fn container(&self) -> &Container {
        &self.container
    }

    pub fn outer(&self) -> &Container {
        &self.outer
    }

    pub fn inner(&self) -> &Container {
        &self.inner
    }

    pub fn encode(&self, o: u32, g: &[u32]) -> u32 {
        (self.families.offset(o) + rank_uniform(g, self.inner.shape_count())) as u32
    }

    pub fn decode(&self, c: u32) -> (u32, &[u32]) {
        let (o, g) = &self.decoded[c as usize];
        (*o, g)
    }

    /// Composite position `x` of shape `c` as `(q, p)`.
    pub fn split_pos(&self, c: u32, x: u32) -> (u32, u32) {
        let offs = &self.pos_offsets[c as usize];
        // The last offset <= x; outer positions with no inner positions
        // share their offset with the next one.
        let q = offs.partition_point(|&o| o <= x) - 1;
        (q as u32, x - offs[q])
    }

    pub fn join_pos(&self, c: u32, q: u32, p: u32) -> u32 {
        self.pos_offsets[c as usize][q as usize] + p
    }
}

/// Positions of the dependent pair type `Σ_{p < dims.len()} Fin dims[p]`,
/// flattened lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaIndex {
    offsets: Vec<u32>,
}

impl SigmaIndex {
    pub fn new<I: IntoIterator<Item = u32>>(dims: I) -> Self {
        let mut offsets = vec![0u32];
        let mut acc = 0u32;
        for d in dims {
            acc += d;
            offsets.push(acc);
        }
        SigmaIndex { offsets }
    }

    pub fn total(&self) -> u32 {
        *self.offsets.last().expect("nonempty")
    }

    pub fn flat(&self, p: u32, p2: u32) -> u32 {
        self.offsets[p as usize] + p2
    }

    pub fn range(&self, p: u32) -> std::ops::Range<usize> {
        self.offsets[p as usize] as usize..self.offsets[p as usize + 1] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::enumerate_dep_maps;

    fn exc(e: u32) -> Container {
        let mut pos = vec![1];
        pos.extend(std::iter::repeat(0).take(e as usize));
        Container::from_counts(pos)
    }

    #[test]
    fn composite_shape_count_follows_sigma_formula() {
        // exception(E=1) as outer over writer(Z2): 2^1 + 2^0 shapes.
        let c = compose_containers(&exc(1), &Container::from_counts(vec![1, 1])).unwrap();
        assert_eq!(c.container().shape_count(), 3);
        for s in 0..c.container().shape_count() {
            let (o, g) = c.decode(s);
            assert_eq!(c.encode(o, g), s);
            let expect: u32 = g.iter().map(|&t| c.inner().pos(t)).sum();
            assert_eq!(c.container().pos(s), expect);
        }
    }

    #[test]
    fn unit_container_is_neutral() {
        let unit = Container::from_counts(vec![1]);
        let cont = Container::from_counts(vec![0, 2, 3]);
        let c = compose_containers(&cont, &unit).unwrap();
        assert_eq!(c.container().positions(), cont.positions());
        let c = compose_containers(&unit, &cont).unwrap();
        assert_eq!(c.container().positions(), cont.positions());
    }

    #[test]
    fn split_and_join_positions() {
        let inner = Container::from_counts(vec![0, 2]);
        let outer = Container::from_counts(vec![3]);
        let c = compose_containers(&outer, &inner).unwrap();
        for s in 0..c.container().shape_count() {
            let (_, g) = c.decode(s);
            let mut x = 0;
            for (q, &t) in g.iter().enumerate() {
                for p in 0..inner.pos(t) {
                    assert_eq!(c.split_pos(s, x), (q as u32, p));
                    assert_eq!(c.join_pos(s, q as u32, p), x);
                    x += 1;
                }
            }
        }
    }

    #[test]
    fn fueled_outer_is_unsupported() {
        let list = Container::fueled(vec!["0".into(), "1".into()], vec![0, 1], 1).unwrap();
        assert!(matches!(
            compose_containers(&list, &exc(1)),
            Err(Error::Unsupported(_))
        ));
        assert!(compose_containers(&exc(1), &list).unwrap().container().fuel() == Some(1));
    }

    #[test]
    fn ext_map_swaps_pointwise() {
        let list = Container::from_counts(vec![0, 1, 2]);
        let swap = DepTable::uniform(2, vec![1, 0]).unwrap();
        let e = ExtElement {
            shape: 2,
            fill: vec![0, 1],
        };
        assert_eq!(ext_map(&list, &swap, &e).unwrap().fill, vec![1, 0]);
    }

    #[test]
    fn ext_map_is_functorial() {
        let c = Container::from_counts(vec![0, 1, 2]);
        for x in 0..=3u32 {
            for y in 0..=3u32 {
                for z in 0..=3u32 {
                    for h1 in enumerate_dep_maps(&vec![y; x as usize]) {
                        for h2 in enumerate_dep_maps(&vec![z; y as usize]) {
                            let comp = DepTable::uniform(
                                z,
                                h1.entries().iter().map(|&v| h2.get(v as usize)).collect(),
                            )
                            .unwrap();
                            for e in extension_elements(&c, x) {
                                let lhs = ext_map(&c, &comp, &e).unwrap();
                                let rhs =
                                    ext_map(&c, &h2, &ext_map(&c, &h1, &e).unwrap()).unwrap();
                                assert_eq!(lhs, rhs);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn identity_morphism_is_identity() {
        let c = exc(2);
        let id = ContainerMorphism::identity(&c);
        for x in 0..=2 {
            for e in extension_elements(&c, x) {
                assert_eq!(interpret_morphism(&id, &e).unwrap(), e);
            }
        }
    }
}
