//! Closed oriented link diagrams as Morse words.
//!
//! A diagram is read bottom to top. The current horizontal slice holds an ordered
//! list of strands; events act on adjacent positions:
//!
//! * `cup` at `pos` inserts two strands of one component at `pos`, `pos + 1`;
//!   `left_up` says whether the left one is oriented upward.
//! * `cap` at `pos` joins the strands at `pos`, `pos + 1`.
//! * `cross` at `pos` swaps the strands at `pos`, `pos + 1`; `over` names the
//!   strand (by its position below the crossing) that passes over.
//!
//! Framings are blackboard framings.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::label::Label;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Over {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Event {
    Cup { pos: usize, component: usize, left_up: bool },
    Cap { pos: usize },
    Cross { pos: usize, over: Over },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub label: Label,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkDiagram {
    pub components: Vec<Component>,
    pub events: Vec<Event>,
}

/// A strand of the current slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Strand {
    pub component: usize,
    pub up: bool,
}

/// Data of one crossing: components and orientations of the strands entering
/// from the bottom left and bottom right.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingInfo {
    pub left: Strand,
    pub right: Strand,
    pub over: Over,
}

impl CrossingInfo {
    /// Sign by the right-hand rule.
    pub fn sign(&self) -> i64 {
        // left strand runs bottom-left to top-right, right strand bottom-right to top-left
        let dl: (i64, i64) = if self.left.up { (1, 1) } else { (-1, -1) };
        let dr: (i64, i64) = if self.right.up { (-1, 1) } else { (1, -1) };
        let (o, u) = match self.over {
            Over::Left => (dl, dr),
            Over::Right => (dr, dl),
        };
        (o.0 * u.1 - o.1 * u.0).signum()
    }
}

fn derr(msg: impl Into<String>) -> Error {
    Error::Diagram(msg.into())
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }
}

impl LinkDiagram {
    pub fn from_json(text: &str) -> Result<LinkDiagram> {
        let d: LinkDiagram = serde_json::from_str(text).map_err(|e| derr(format!("{e}")))?;
        d.validate()?;
        Ok(d)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("diagram serializes")
    }

    pub fn empty() -> LinkDiagram {
        LinkDiagram { components: vec![], events: vec![] }
    }

    /// Replays the word, calling `f` with each event and the slice just below it.
    pub fn walk<F>(&self, mut f: F) -> Result<()>
    where
        F: FnMut(usize, &Event, &[Strand]) -> Result<()>,
    {
        let mut slice: Vec<Strand> = Vec::new();
        for (n, ev) in self.events.iter().enumerate() {
            f(n, ev, &slice)?;
            match *ev {
                Event::Cup { pos, component, left_up } => {
                    if pos > slice.len() {
                        return Err(derr(format!("event {n}: cup at {pos} in a slice of width {}", slice.len())));
                    }
                    if component >= self.components.len() {
                        return Err(derr(format!("event {n}: unknown component {component}")));
                    }
                    slice.insert(pos, Strand { component, up: !left_up });
                    slice.insert(pos, Strand { component, up: left_up });
                }
                Event::Cap { pos } => {
                    if pos + 1 >= slice.len() {
                        return Err(derr(format!("event {n}: cap at {pos} in a slice of width {}", slice.len())));
                    }
                    let (a, b) = (slice[pos], slice[pos + 1]);
                    if a.component != b.component {
                        return Err(derr(format!("event {n}: cap joins components {} and {}", a.component, b.component)));
                    }
                    if a.up == b.up {
                        return Err(derr(format!("event {n}: cap joins strands of equal orientation")));
                    }
                    slice.drain(pos..pos + 2);
                }
                Event::Cross { pos, .. } => {
                    if pos + 1 >= slice.len() {
                        return Err(derr(format!("event {n}: crossing at {pos} in a slice of width {}", slice.len())));
                    }
                    slice.swap(pos, pos + 1);
                }
            }
        }
        if !slice.is_empty() {
            return Err(derr(format!("{} strands left open at the top", slice.len())));
        }
        Ok(())
    }

    /// Checks that the word is well formed and each component is a single circle.
    pub fn validate(&self) -> Result<()> {
        let mut arcs = Dsu(Vec::new());
        let mut arc_comp: Vec<usize> = Vec::new();
        let mut slice_arcs: Vec<usize> = Vec::new();
        let mut closed = vec![0usize; self.components.len()];
        self.walk(|_, ev, _| {
            match *ev {
                Event::Cup { pos, component, .. } => {
                    let id = arcs.0.len();
                    arcs.0.push(id);
                    arc_comp.push(component);
                    if pos <= slice_arcs.len() {
                        slice_arcs.insert(pos, id);
                        slice_arcs.insert(pos, id);
                    }
                }
                Event::Cap { pos } => {
                    if pos + 1 < slice_arcs.len() {
                        let (a, b) = (arcs.find(slice_arcs[pos]), arcs.find(slice_arcs[pos + 1]));
                        if a == b {
                            closed[arc_comp[a]] += 1;
                        } else {
                            arcs.0[b] = a;
                        }
                        slice_arcs.drain(pos..pos + 2);
                    }
                }
                Event::Cross { pos, .. } => {
                    if pos + 1 < slice_arcs.len() {
                        slice_arcs.swap(pos, pos + 1);
                    }
                }
            }
            Ok(())
        })?;
        for (k, c) in closed.iter().enumerate() {
            match c {
                1 => {}
                0 => return Err(derr(format!("component {k} does not occur"))),
                n => return Err(derr(format!("component {k} consists of {n} circles"))),
            }
        }
        Ok(())
    }

    pub fn crossings(&self) -> Result<Vec<CrossingInfo>> {
        let mut out = Vec::new();
        self.walk(|_, ev, slice| {
            if let Event::Cross { pos, over } = *ev {
                if pos + 1 < slice.len() {
                    out.push(CrossingInfo { left: slice[pos], right: slice[pos + 1], over });
                }
            }
            Ok(())
        })?;
        Ok(out)
    }

    /// Linking matrix: off-diagonal linking numbers, writhes on the diagonal.
    pub fn linking_matrix(&self) -> Result<Vec<Vec<i64>>> {
        let n = self.components.len();
        let mut twice = vec![vec![0i64; n]; n];
        for c in self.crossings()? {
            let (i, j) = (c.left.component, c.right.component);
            let s = c.sign();
            if i == j {
                twice[i][i] += 2 * s;
            } else {
                twice[i][j] += s;
                twice[j][i] += s;
            }
        }
        Ok(twice.into_iter().map(|row| row.into_iter().map(|v| v / 2).collect()).collect())
    }

    /// Each component `l` must satisfy `sum_k lk(C_k, C_l) label_k = 0` in `Q/2Z`.
    pub fn check_admissible(&self) -> Result<()> {
        let lk = self.linking_matrix()?;
        for l in 0..self.components.len() {
            let s = (0..self.components.len()).fold(Label::ZERO, |acc, k| acc + self.components[k].label.times(lk[k][l]));
            if !s.is_zero() {
                return Err(Error::Inadmissible {
                    component: l,
                    msg: format!("sum of linking numbers times labels is {s}, not 0"),
                });
            }
        }
        Ok(())
    }

    pub fn is_admissible(&self) -> bool {
        self.check_admissible().is_ok()
    }

    /// Reverses the orientation of component `k` and negates its label.
    pub fn reverse_component(&self, k: usize) -> Result<LinkDiagram> {
        if k >= self.components.len() {
            return Err(Error::KirbySite(format!("no component {k}")));
        }
        let mut d = self.clone();
        d.components[k].label = -d.components[k].label;
        for ev in &mut d.events {
            if let Event::Cup { component, left_up, .. } = ev {
                if *component == k {
                    *left_up = !*left_up;
                }
            }
        }
        Ok(d)
    }

    /// Deletes component `k` and every crossing it takes part in.
    pub fn remove_component(&self, k: usize) -> Result<LinkDiagram> {
        if k >= self.components.len() {
            return Err(Error::KirbySite(format!("no component {k}")));
        }
        let mut events = Vec::new();
        let renum = |c: usize| if c > k { c - 1 } else { c };
        self.walk(|_, ev, slice| {
            let newpos = |p: usize| slice[..p].iter().filter(|s| s.component != k).count();
            match *ev {
                Event::Cup { pos, component, left_up } if component != k => {
                    events.push(Event::Cup { pos: newpos(pos), component: renum(component), left_up })
                }
                Event::Cap { pos } if slice[pos].component != k => events.push(Event::Cap { pos: newpos(pos) }),
                Event::Cross { pos, over } if slice[pos].component != k && slice[pos + 1].component != k => {
                    events.push(Event::Cross { pos: newpos(pos), over })
                }
                _ => {}
            }
            Ok(())
        })?;
        let mut components = self.components.clone();
        components.remove(k);
        Ok(LinkDiagram { components, events })
    }

    fn strand_at(&self, at: usize, pos: usize) -> Result<Strand> {
        let mut out = None;
        self.walk(|n, _, slice| {
            if n == at {
                out = slice.get(pos).copied();
            }
            Ok(())
        })?;
        if at == self.events.len() {
            return Err(Error::KirbySite("no strands above the last event".into()));
        }
        out.ok_or_else(|| Error::KirbySite(format!("no strand at position {pos} below event {at}")))
    }

    /// Inserts a 0-framed meridian of component `k`, labeled 0, around its strand
    /// at slice position `pos` just below event `at`. The meridian becomes the last component.
    pub fn add_meridian(&self, k: usize, at: usize, pos: usize) -> Result<LinkDiagram> {
        self.add_framed_meridian(k, at, pos, 0)
    }

    /// Same as [`add_meridian`](Self::add_meridian) with framing `framing` in {-1, 0, 1}.
    pub fn add_framed_meridian(&self, k: usize, at: usize, pos: usize, framing: i64) -> Result<LinkDiagram> {
        if self.strand_at(at, pos)?.component != k {
            return Err(Error::KirbySite(format!("no strand of component {k} at position {pos} below event {at}")));
        }
        if framing.abs() > 1 {
            return Err(Error::KirbySite(format!("meridian framing {framing} not in -1..=1")));
        }
        let m = self.components.len();
        let mut d = self.clone();
        d.components.push(Component { label: Label::ZERO });
        let mut ring = vec![
            Event::Cup { pos: pos + 1, component: m, left_up: true },
            Event::Cross { pos, over: Over::Right },
            Event::Cross { pos, over: Over::Right },
        ];
        if framing != 0 {
            // a curl on the downward strand of the meridian, which is at pos + 2
            let over = if framing > 0 { Over::Right } else { Over::Left };
            ring.extend([Event::Cup { pos: pos + 3, component: m, left_up: true }, Event::Cross { pos: pos + 2, over }, Event::Cap { pos: pos + 2 }]);
        }
        ring.push(Event::Cap { pos: pos + 1 });
        d.events.splice(at..at, ring);
        Ok(d)
    }

    /// Puts a kink into the strand at slice position `pos` below event `at`.
    /// The writhe of its component changes by `+1` for `Over::Right`, `-1` for `Over::Left`.
    pub fn add_curl(&self, at: usize, pos: usize, over: Over) -> Result<LinkDiagram> {
        let s = self.strand_at(at, pos)?;
        let mut d = self.clone();
        let kink = [Event::Cup { pos: pos + 1, component: s.component, left_up: !s.up }, Event::Cross { pos, over }, Event::Cap { pos }];
        d.events.splice(at..at, kink);
        Ok(d)
    }

    /// Handle slide of component `c1` over component `c2` along a band that starts
    /// at the strand of `c1` at slice position `p1` below event `at` and ends on
    /// the blackboard pushoff of the strand of `c2` at position `p2`.
    ///
    /// Returns the new diagram and the sign `s` with `[C1'] = [C1] + s [C2]`;
    /// the label of `c2` becomes `label(c2) - s label(c1)`.
    pub fn handle_slide(&self, c1: usize, c2: usize, at: usize, p1: usize, p2: usize) -> Result<(LinkDiagram, i64)> {
        let n = self.components.len();
        if c1 == c2 || c1 >= n || c2 >= n {
            return Err(Error::KirbySite(format!("cannot slide component {c1} over {c2}")));
        }
        let mut dirs = None;
        self.walk(|e, _, slice| {
            if e == at {
                if let (Some(a), Some(b)) = (slice.get(p1), slice.get(p2)) {
                    if a.component == c1 && b.component == c2 {
                        dirs = Some((a.up, b.up));
                    }
                }
            }
            Ok(())
        })?;
        let (up1, up2) = dirs.ok_or_else(|| Error::KirbySite(format!("no strands of {c1} and {c2} at {p1}, {p2} below event {at}")))?;
        // the band joins C1 to an antiparallel strand of the pushoff
        let sign: i64 = if up1 == up2 { -1 } else { 1 };
        let push = n;
        let (mut cabled, start) = self.cable(c2, push, sign == 1, at)?;
        // positions in the cabled slice below `start`
        let mut slice_at: Vec<Strand> = Vec::new();
        cabled.walk(|e, _, slice| {
            if e == start {
                slice_at = slice.to_vec();
            }
            Ok(())
        })?;
        let x = slice_at
            .iter()
            .enumerate()
            .filter(|(_, s)| s.component == c1)
            .map(|(i, _)| i)
            .nth(self.nth_of_component(at, p1, c1)?)
            .ok_or_else(|| Error::KirbySite("strand of c1 lost while cabling".into()))?;
        let y = {
            let target = self.nth_of_component(at, p2, c2)?;
            slice_at
                .iter()
                .enumerate()
                .filter(|(_, s)| s.component == push)
                .map(|(i, _)| i)
                .nth(target)
                .ok_or_else(|| Error::KirbySite("pushoff strand not found".into()))?
        };
        let mut ins = Vec::new();
        let z;
        if x < y {
            for p in x..y - 1 {
                ins.push(Event::Cross { pos: p, over: Over::Left });
            }
            z = y - 1;
            ins.push(Event::Cap { pos: z });
            ins.push(Event::Cup { pos: z, component: c1, left_up: up1 });
            for p in (x..z).rev() {
                ins.push(Event::Cross { pos: p, over: Over::Right });
            }
        } else {
            for p in (y + 1..x).rev() {
                ins.push(Event::Cross { pos: p, over: Over::Right });
            }
            z = y;
            ins.push(Event::Cap { pos: z });
            ins.push(Event::Cup { pos: z, component: c1, left_up: !up1 });
            for p in z + 1..x {
                ins.push(Event::Cross { pos: p, over: Over::Left });
            }
        }
        cabled.events.splice(start..start, ins);
        for ev in &mut cabled.events {
            if let Event::Cup { component, .. } = ev {
                if *component == push {
                    *component = c1;
                }
            }
        }
        cabled.components.truncate(n);
        let l1 = cabled.components[c1].label;
        cabled.components[c2].label = cabled.components[c2].label - l1.times(sign);
        cabled.validate()?;
        Ok((cabled, sign))
    }

    /// Index of the strand at `pos` among the strands of component `c`, below event `at`.
    fn nth_of_component(&self, at: usize, pos: usize, c: usize) -> Result<usize> {
        let mut out = None;
        self.walk(|e, _, slice| {
            if e == at {
                out = Some(slice[..pos].iter().filter(|s| s.component == c).count());
            }
            Ok(())
        })?;
        out.ok_or_else(|| Error::KirbySite(format!("no event {at}")))
    }

    /// Doubles component `c` by its blackboard pushoff, which gets component index
    /// `push` (one past the last) and is oriented parallel or antiparallel to `c`.
    /// The pushoff runs to the left of `c` with respect to the orientation of `c`.
    /// Also returns the index of event `at` in the new word.
    fn cable(&self, c: usize, push: usize, parallel: bool, at: usize) -> Result<(LinkDiagram, usize)> {
        let mut events = Vec::new();
        let mut start = None;
        let mut widths: Vec<usize> = Vec::new();
        self.walk(|e, ev, slice| {
            if e == at {
                start = Some(events.len());
            }
            widths.clear();
            widths.extend(slice.iter().map(|s| if s.component == c { 2 } else { 1 }));
            let q = |p: usize| widths[..p].iter().sum::<usize>();
            match *ev {
                Event::Cup { pos, component, left_up } => {
                    let base: usize = widths[..pos].iter().sum();
                    if component == c {
                        let push_up = if parallel { left_up } else { !left_up };
                        // outer cup is the pushoff exactly when the left strand runs upward
                        let (outer, inner) = if left_up { ((push, push_up), (c, left_up)) } else { ((c, left_up), (push, push_up)) };
                        events.push(Event::Cup { pos: base, component: outer.0, left_up: outer.1 });
                        events.push(Event::Cup { pos: base + 1, component: inner.0, left_up: inner.1 });
                    } else {
                        events.push(Event::Cup { pos: base, component, left_up });
                    }
                }
                Event::Cap { pos } => {
                    let base = q(pos);
                    if slice[pos].component == c {
                        events.push(Event::Cap { pos: base + 1 });
                        events.push(Event::Cap { pos: base });
                    } else {
                        events.push(Event::Cap { pos: base });
                    }
                }
                Event::Cross { pos, over } => {
                    let base = q(pos);
                    let (a, b) = (widths[pos], widths[pos + 1]);
                    for j in (0..a).rev() {
                        for s in 0..b {
                            events.push(Event::Cross { pos: base + j + s, over });
                        }
                    }
                }
            }
            Ok(())
        })?;
        let start = match start {
            Some(s) => s,
            None if at == self.events.len() => events.len(),
            None => return Err(Error::KirbySite(format!("no event {at}"))),
        };
        let mut components = self.components.clone();
        components.push(Component { label: Label::ZERO });
        Ok((LinkDiagram { components, events }, start))
    }

    /// Slices (event indices) where both components have strands.
    pub fn common_heights(&self, c1: usize, c2: usize) -> Result<Vec<(usize, Vec<usize>, Vec<usize>)>> {
        let mut out = Vec::new();
        self.walk(|e, _, slice| {
            let p1: Vec<usize> = (0..slice.len()).filter(|&i| slice[i].component == c1).collect();
            let p2: Vec<usize> = (0..slice.len()).filter(|&i| slice[i].component == c2).collect();
            if !p1.is_empty() && !p2.is_empty() {
                out.push((e, p1, p2));
            }
            Ok(())
        })?;
        Ok(out)
    }
}

/// A random diagram: each component is one cup, followed by random crossings of
/// adjacent strands and a closing phase that brings each component's two
/// strands together. Labels are all 0; see [`random_admissible`].
pub fn random_diagram<R: Rng>(rng: &mut R, components: usize, crossings: usize) -> LinkDiagram {
    let mut events = Vec::new();
    let mut slice: Vec<Strand> = Vec::new();
    let over = |rng: &mut R| if rng.gen_bool(0.5) { Over::Left } else { Over::Right };
    for k in 0..components {
        let pos = rng.gen_range(0..=slice.len());
        let left_up = rng.gen_bool(0.5);
        events.push(Event::Cup { pos, component: k, left_up });
        slice.insert(pos, Strand { component: k, up: !left_up });
        slice.insert(pos, Strand { component: k, up: left_up });
    }
    for _ in 0..crossings {
        if slice.len() < 2 {
            break;
        }
        let pos = rng.gen_range(0..slice.len() - 1);
        events.push(Event::Cross { pos, over: over(rng) });
        slice.swap(pos, pos + 1);
    }
    while !slice.is_empty() {
        if let Some(p) = (0..slice.len() - 1).find(|&p| slice[p].component == slice[p + 1].component) {
            events.push(Event::Cap { pos: p });
            slice.drain(p..p + 2);
            continue;
        }
        // move the left strand of the first component toward its partner
        let c = slice[0].component;
        events.push(Event::Cross { pos: 0, over: over(rng) });
        slice.swap(0, 1);
        let mut p = 1;
        while slice[p + 1].component != c {
            events.push(Event::Cross { pos: p, over: over(rng) });
            slice.swap(p, p + 1);
            p += 1;
        }
    }
    LinkDiagram { components: vec![Component { label: Label::ZERO }; components], events }
}

/// Assigns labels from `pool` making the diagram admissible, preferring nonzero
/// labels; `None` if only the zero labeling works and `nonzero` is requested.
pub fn random_admissible_labels<R: Rng>(rng: &mut R, d: &LinkDiagram, pool: &[Label], nonzero: bool) -> Option<LinkDiagram> {
    let n = d.components.len();
    let mut choices: Vec<Vec<Label>> = Vec::new();
    let total = pool.len().pow(n as u32);
    for mut k in 0..total {
        let mut labels = Vec::with_capacity(n);
        for _ in 0..n {
            labels.push(pool[k % pool.len()]);
            k /= pool.len();
        }
        let mut c = d.clone();
        for (comp, l) in c.components.iter_mut().zip(&labels) {
            comp.label = *l;
        }
        if c.is_admissible() && (!nonzero || labels.iter().any(|l| !l.is_zero())) {
            choices.push(labels);
        }
    }
    let labels = choices.choose(rng)?;
    let mut c = d.clone();
    for (comp, l) in c.components.iter_mut().zip(labels) {
        comp.label = *l;
    }
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub fn hopf_link(over: Over) -> LinkDiagram {
        // two circles side by side, crossing twice
        LinkDiagram {
            components: vec![Component { label: Label::ZERO }, Component { label: Label::ZERO }],
            events: vec![
                Event::Cup { pos: 0, component: 0, left_up: true },
                Event::Cup { pos: 2, component: 1, left_up: true },
                Event::Cross { pos: 1, over },
                Event::Cross { pos: 1, over },
                Event::Cap { pos: 2 },
                Event::Cap { pos: 0 },
            ],
        }
    }

    #[test]
    fn hopf_link_linking() {
        let d = hopf_link(Over::Left);
        d.validate().unwrap();
        let lk = d.linking_matrix().unwrap();
        assert_eq!(lk[0][1].abs(), 1);
        assert_eq!(lk[0][0], 0);
        let mut bad = d.clone();
        bad.components[0].label = Label::from_frac(1, 2);
        assert!(matches!(bad.check_admissible(), Err(Error::Inadmissible { component: 1, .. })));
    }

    #[test]
    fn rejects_malformed() {
        let d = LinkDiagram {
            components: vec![Component { label: Label::ZERO }],
            events: vec![Event::Cup { pos: 0, component: 0, left_up: true }],
        };
        assert!(d.validate().is_err());
        let d = LinkDiagram {
            components: vec![Component { label: Label::ZERO }, Component { label: Label::ZERO }],
            events: vec![Event::Cup { pos: 0, component: 0, left_up: true }, Event::Cap { pos: 0 }],
        };
        assert!(d.validate().is_err());
    }

    #[test]
    fn json_round_trip() {
        let d = hopf_link(Over::Right);
        let back = LinkDiagram::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn random_diagrams_are_valid_and_moves_preserve_admissibility() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pool = Label::all_with_denominator(2);
        for _ in 0..40 {
            let n = rng.gen_range(1..=3);
            let c = rng.gen_range(0..6);
            let d = random_diagram(&mut rng, n, c);
            d.validate().unwrap();
            let d = random_admissible_labels(&mut rng, &d, &pool, false).unwrap();
            d.check_admissible().unwrap();
            let r = d.reverse_component(0).unwrap();
            r.validate().unwrap();
            assert!(r.is_admissible());
            let lk = d.linking_matrix().unwrap();
            let lr = r.linking_matrix().unwrap();
            assert_eq!(lk[0][0], lr[0][0]);
            if n >= 2 {
                let hs = d.common_heights(0, 1).unwrap();
                let (at, p1, p2) = hs[rng.gen_range(0..hs.len())].clone();
                let (s, sign) = d.handle_slide(0, 1, at, p1[0], p2[0]).unwrap();
                assert!(s.is_admissible(), "{}", s.to_json());
                let ls = s.linking_matrix().unwrap();
                // C1' = C1 + sign C2
                assert_eq!(ls[0][0], lk[0][0] + lk[1][1] + 2 * sign * lk[0][1]);
                assert_eq!(ls[0][1], lk[0][1] + sign * lk[1][1]);
            }
        }
    }

    #[test]
    fn meridian_and_removal() {
        let d = hopf_link(Over::Left);
        let m = d.add_meridian(1, 2, 2).unwrap();
        m.validate().unwrap();
        let lk = m.linking_matrix().unwrap();
        assert_eq!(lk[2][1].abs(), 1);
        assert_eq!(lk[2][0], 0);
        for f in [-1, 1] {
            let m = d.add_framed_meridian(1, 2, 2, f).unwrap();
            m.validate().unwrap();
            assert_eq!(m.linking_matrix().unwrap()[2][2], f);
        }
        for over in [Over::Left, Over::Right] {
            for pos in 0..4 {
                let c = d.add_curl(2, pos, over).unwrap();
                c.validate().unwrap();
                let k = pos / 2;
                let w = c.linking_matrix().unwrap()[k][k];
                assert_eq!(w, if over == Over::Right { 1 } else { -1 });
            }
        }
        let r = m.remove_component(1).unwrap();
        r.validate().unwrap();
        assert_eq!(r.components.len(), 2);
    }
}
