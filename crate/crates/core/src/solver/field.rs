/// Dense 2D array indexed `(i, j)` with `i` along x, stored with `j` fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct Field2 {
    pub nx: usize,
    pub ny: usize,
    pub data: Vec<f64>,
}

impl Field2 {
    pub fn zeros(nx: usize, ny: usize) -> Self {
        Field2 {
            nx,
            ny,
            data: vec![0.0; nx * ny],
        }
    }

    pub fn from_fn(nx: usize, ny: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut out = Field2::zeros(nx, ny);
        for i in 0..nx {
            for j in 0..ny {
                out.data[i * ny + j] = f(i, j);
            }
        }
        out
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        i * self.ny + j
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.ny + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        let k = self.idx(i, j);
        self.data[k] = x;
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, x: f64) {
        let k = self.idx(i, j);
        self.data[k] += x;
    }

    /// Value at signed indices with `0` outside the array.
    #[inline]
    pub fn get_or_zero(&self, i: isize, j: isize) -> f64 {
        if i < 0 || j < 0 || i as usize >= self.nx || j as usize >= self.ny {
            0.0
        } else {
            self.at(i as usize, j as usize)
        }
    }

    /// Value at signed indices with the indices clamped into the array.
    #[inline]
    pub fn get_clamped(&self, i: isize, j: isize) -> f64 {
        let i = i.clamp(0, self.nx as isize - 1) as usize;
        let j = j.clamp(0, self.ny as isize - 1) as usize;
        self.at(i, j)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn fill(&mut self, x: f64) {
        self.data.iter_mut().for_each(|v| *v = x);
    }

    /// Copy of the block starting at `(i0, j0)` with the given shape.
    pub fn crop(&self, i0: usize, j0: usize, nx: usize, ny: usize) -> Field2 {
        assert!(i0 + nx <= self.nx && j0 + ny <= self.ny, "crop out of range");
        Field2::from_fn(nx, ny, |i, j| self.at(i0 + i, j0 + j))
    }

    pub fn scaled(&self, k: f64) -> Field2 {
        Field2 {
            nx: self.nx,
            ny: self.ny,
            data: self.data.iter().map(|x| k * x).collect(),
        }
    }
}
