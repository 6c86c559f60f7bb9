//! Face tracing and chequerboard colouring.

use super::{Diagram, DiagramError, Port};

/// Faces traced by the rotation system. A port's face is the one on the right
/// of the edge leaving it; the corner between slots k and k+1 of crossing c
/// lies in the face of port (c, k+1).
#[derive(Clone, Debug)]
pub struct Faces {
    pub of_port: Vec<[usize; 4]>,
    pub cycles: Vec<Vec<Port>>,
}

impl Faces {
    pub fn count(&self) -> usize {
        self.cycles.len()
    }

    pub fn corner(&self, c: usize, k: u8) -> usize {
        self.of_port[c][((k + 1) % 4) as usize]
    }

    pub fn face(&self, p: Port) -> usize {
        self.of_port[p.c][p.s as usize]
    }

    pub fn count_in_piece(&self, piece: &[usize]) -> usize {
        let mut fs: Vec<usize> = piece.iter().flat_map(|&c| self.of_port[c]).collect();
        fs.sort_unstable();
        fs.dedup();
        fs.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn flip(self) -> Self {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

/// Colours per face of `faces`, plus the chosen unbounded face of each piece.
#[derive(Clone, Debug)]
pub struct Coloring {
    pub faces: Faces,
    pub color: Vec<Color>,
    pub outer: Vec<usize>,
}

impl Coloring {
    pub fn corner_color(&self, c: usize, k: u8) -> Color {
        self.color[self.faces.corner(c, k)]
    }

    pub fn inverted(&self) -> Self {
        Self {
            faces: self.faces.clone(),
            color: self.color.iter().map(|c| c.flip()).collect(),
            outer: self.outer.clone(),
        }
    }
}

impl Diagram {
    pub fn faces(&self) -> Faces {
        let n = self.len();
        let mut of_port = vec![[usize::MAX; 4]; n];
        let mut cycles = Vec::new();
        for p in self.ports() {
            if of_port[p.c][p.s as usize] != usize::MAX {
                continue;
            }
            let id = cycles.len();
            let mut cyc = Vec::new();
            let mut q = p;
            while of_port[q.c][q.s as usize] == usize::MAX {
                of_port[q.c][q.s as usize] = id;
                cyc.push(q);
                q = self.nbr(q).rot(1);
            }
            cycles.push(cyc);
        }
        Faces { of_port, cycles }
    }

    /// Whether the reflection maps face `f` to itself.
    pub fn face_is_symmetric(&self, faces: &Faces, f: usize) -> bool {
        let p = faces.cycles[f][0];
        // corner before port p is (p.c, p.s-1); its image sits before rho(p.c, p.s-1)
        match self.rho(p.rot(3)) {
            Some(q) => faces.face(q) == f,
            None => false,
        }
    }

    /// Default choice of the unbounded face for each piece: the stored hint if it
    /// lies in the piece, else the largest reflection-invariant face, else the largest face.
    pub(crate) fn outer_faces(&self, faces: &Faces) -> Vec<(Vec<usize>, usize)> {
        let mut out = Vec::new();
        for piece in self.pieces() {
            if let Some(h) = self.outer_hint.filter(|h| piece.binary_search(&h.c).is_ok()) {
                out.push((piece, faces.face(h)));
                continue;
            }
            let mut cands: Vec<usize> = piece.iter().flat_map(|&c| faces.of_port[c]).collect();
            cands.sort_unstable();
            cands.dedup();
            let sym: Vec<usize> = cands.iter().copied().filter(|&f| self.face_is_symmetric(faces, f)).collect();
            let pool = if sym.is_empty() { &cands } else { &sym };
            let best = *pool
                .iter()
                .max_by_key(|&&f| (faces.cycles[f].len(), std::cmp::Reverse(faces.cycles[f][0])))
                .unwrap();
            out.push((piece, best));
        }
        out
    }

    /// The unique colouring with the unbounded face of every piece white.
    /// Regions of the plane cut out by the whole diagram, free loops included.
    pub fn region_count(&self) -> usize {
        let faces = self.faces();
        let pieces = self.pieces();
        1 + pieces.iter().map(|p| faces.count_in_piece(p) - 1).sum::<usize>() + self.free_loops.len()
    }

    pub fn chequerboard(&self) -> Result<Coloring, DiagramError> {
        let faces = self.faces();
        let nf = faces.count();
        let mut color: Vec<Option<crate::diagram::Color>> = vec![None; nf];
        let mut outer = Vec::new();
        for (_, f0) in self.outer_faces(&faces) {
            outer.push(f0);
            color[f0] = Some(Color::White);
            let mut stack = vec![f0];
            while let Some(f) = stack.pop() {
                let cf = color[f].unwrap();
                for &p in &faces.cycles[f] {
                    let g = faces.face(self.nbr(p));
                    match color[g] {
                        None => {
                            color[g] = Some(cf.flip());
                            stack.push(g);
                        }
                        Some(cg) if cg == cf => {
                            return Err(DiagramError::Validation("faces are not two-colourable".into()))
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(Coloring { faces, color: color.into_iter().map(|c| c.unwrap()).collect(), outer })
    }
}
