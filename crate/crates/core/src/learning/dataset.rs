/// One training or test example: a condition vector and its target.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    /// Acquisition time in seconds.
    pub t: f64,
    pub x: Vec<f64>,
    pub y: f64,
}

impl Sample {
    pub fn new(x: Vec<f64>, y: f64) -> Self {
        Self { t: 0.0, x, y }
    }

    pub fn at(t: f64, x: Vec<f64>, y: f64) -> Self {
        Self { t, x, y }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct DatasetMeta {
    /// Sample period in seconds, when the data came from a fixed-rate run.
    pub dt: Option<f64>,
    pub input_names: Vec<String>,
    pub output_name: String,
}

/// Ordered samples. The order is the update order during training.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Dataset {
    pub samples: Vec<Sample>,
    pub meta: DatasetMeta,
}

impl Dataset {
    pub fn new(samples: Vec<Sample>) -> Self {
        Self {
            samples,
            meta: DatasetMeta::default(),
        }
    }

    pub fn with_meta(samples: Vec<Sample>, meta: DatasetMeta) -> Self {
        Self { samples, meta }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Sample> {
        self.samples.iter()
    }
}

impl FromIterator<Sample> for Dataset {
    fn from_iter<I: IntoIterator<Item = Sample>>(iter: I) -> Self {
        Dataset::new(iter.into_iter().collect())
    }
}
