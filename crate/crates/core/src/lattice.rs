/// Square window |x| ≤ T, |y| ≤ T of ℤ², stored row-major with x as the row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeWindow {
    half_width: usize,
}

impl LatticeWindow {
    pub fn new(half_width: usize) -> Self {
        Self { half_width }
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    /// Sites per row, 2T+1.
    pub fn side(&self) -> usize {
        2 * self.half_width + 1
    }

    pub fn len(&self) -> usize {
        self.side() * self.side()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: i64, y: i64) -> bool {
        let t = self.half_width as i64;
        x.abs() <= t && y.abs() <= t
    }

    pub fn index(&self, x: i64, y: i64) -> Option<usize> {
        self.contains(x, y).then(|| {
            let t = self.half_width as i64;
            ((x + t) as usize) * self.side() + (y + t) as usize
        })
    }

    pub fn site(&self, index: usize) -> Option<(i64, i64)> {
        (index < self.len()).then(|| {
            let t = self.half_width as i64;
            let side = self.side();
            ((index / side) as i64 - t, (index % side) as i64 - t)
        })
    }

    /// Row offset of coordinate `x` (or column offset of `y`).
    #[inline]
    pub fn offset(&self, coord: i64) -> usize {
        (coord + self.half_width as i64) as usize
    }

    /// All sites in storage order.
    pub fn sites(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        let t = self.half_width as i64;
        (-t..=t).flat_map(move |x| (-t..=t).map(move |y| (x, y)))
    }
}
