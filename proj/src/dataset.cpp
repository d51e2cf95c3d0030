#include "rnmf/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <stdexcept>

#include "rnmf/pgm.hpp"
#include "rnmf/random.hpp"

namespace rnmf {
namespace fs = std::filesystem;

namespace {

std::string lower_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext;
}

bool is_foreign_image(const std::string& ext) {
  static const std::set<std::string> kRejected = {".png", ".jpg", ".jpeg", ".bmp", ".gif",
                                                  ".tif", ".tiff", ".ppm", ".pnm", ".webp"};
  return kRejected.count(ext) > 0;
}

std::vector<fs::path> sorted_entries(const fs::path& dir, bool want_dirs) {
  std::vector<fs::path> out;
  std::error_code ec;
  fs::directory_iterator it(dir, ec);
  if (ec) throw std::runtime_error(dir.string() + ": cannot read directory (" + ec.message() + ")");
  for (const auto& entry : it) {
    if (entry.path().filename().string().starts_with(".")) continue;
    if (want_dirs ? entry.is_directory() : entry.is_regular_file()) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });
  return out;
}

}  // namespace

void Dataset::validate() const {
  if (height <= 0 || width <= 0) throw std::invalid_argument("Dataset: image dimensions must be positive");
  if (static_cast<Index>(height) * width != X.rows()) {
    throw std::invalid_argument("Dataset: height * width does not match pixel count");
  }
  if (static_cast<Index>(labels.size()) != X.cols()) {
    throw std::invalid_argument("Dataset: one label per sample required");
  }
  for (int label : labels) {
    if (label < 0) throw std::invalid_argument("Dataset: labels must be non-negative");
  }
  if (!X.allFinite() || (X.size() > 0 && (X.minCoeff() < 0.0 || X.maxCoeff() > 1.0))) {
    throw std::invalid_argument("Dataset: entries must be finite and in [0, 1]");
  }
}

Dataset load_image_dataset(const fs::path& root, int reduce) {
  if (reduce < 1) throw std::invalid_argument("load_image_dataset: reduce must be >= 1");
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw std::runtime_error(root.string() + ": dataset directory not found");

  const auto subjects = sorted_entries(root, true);
  if (subjects.empty()) throw std::runtime_error(root.string() + ": no subject directories");

  std::vector<std::vector<double>> columns;
  Labels labels;
  int src_w = -1, src_h = -1;
  fs::path first_image;
  for (std::size_t s = 0; s < subjects.size(); ++s) {
    std::size_t loaded = 0;
    for (const auto& file : sorted_entries(subjects[s], false)) {
      const std::string ext = lower_extension(file);
      if (is_foreign_image(ext)) {
        throw ImageError(file.string() + ": unsupported image codec (only 8-bit PGM is accepted)");
      }
      if (ext != ".pgm") continue;

      const GrayImage img = read_pgm(file);
      if (src_w < 0) {
        src_w = img.width;
        src_h = img.height;
        first_image = file;
        if (src_w / reduce == 0 || src_h / reduce == 0) {
          throw std::invalid_argument(file.string() + ": reduce factor larger than image");
        }
      } else if (img.width != src_w || img.height != src_h) {
        throw ImageError(file.string() + ": dimensions " + std::to_string(img.width) + "x" +
                         std::to_string(img.height) + " differ from " + first_image.string() + " (" +
                         std::to_string(src_w) + "x" + std::to_string(src_h) + ")");
      }

      const int h = src_h / reduce, w = src_w / reduce;
      std::vector<double> col(static_cast<std::size_t>(h) * w);
      for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) col[static_cast<std::size_t>(r) * w + c] = img.at(r * reduce, c * reduce);
      }
      columns.push_back(std::move(col));
      labels.push_back(static_cast<int>(s));
      ++loaded;
    }
    if (loaded == 0) throw std::runtime_error(subjects[s].string() + ": no PGM images in subject directory");
  }

  Dataset ds;
  ds.height = src_h / reduce;
  ds.width = src_w / reduce;
  DenseMatrix raw(static_cast<Index>(ds.height) * ds.width, static_cast<Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    raw.col(static_cast<Index>(j)) = Eigen::Map<const Eigen::VectorXd>(columns[j].data(), raw.rows());
  }
  ds.X = normalize(raw);
  ds.labels = std::move(labels);
  return ds;
}

DenseMatrix normalize(const DenseMatrix& X) {
  if (!X.allFinite()) throw std::invalid_argument("normalize: non-finite entries");
  if (X.size() == 0) return X;
  if (X.minCoeff() < 0.0) throw std::invalid_argument("normalize: negative entries violate non-negativity");
  const double peak = X.maxCoeff();
  if (peak <= 0.0) return X;
  return X / peak;
}

Dataset synthesize_dataset(const SyntheticParams& p) {
  if (p.n_subjects < 1 || p.per_subject < 1 || p.height < 1 || p.width < 1) {
    throw std::invalid_argument("synthesize_dataset: counts and dimensions must be positive");
  }
  if (!(p.noise_scale >= 0.0 && p.noise_scale < 1.0)) {
    throw std::invalid_argument("synthesize_dataset: noise_scale must be in [0, 1)");
  }
  Rng rng(p.seed);
  const Index m = static_cast<Index>(p.height) * p.width;
  Dataset ds;
  ds.height = p.height;
  ds.width = p.width;
  ds.X.resize(m, static_cast<Index>(p.n_subjects) * p.per_subject);
  Eigen::VectorXd prototype(m);
  Index col = 0;
  for (int s = 0; s < p.n_subjects; ++s) {
    for (Index i = 0; i < m; ++i) prototype(i) = rng.uniform();
    for (int r = 0; r < p.per_subject; ++r, ++col) {
      for (Index i = 0; i < m; ++i) {
        const double jitter = p.noise_scale * (2.0 * rng.uniform() - 1.0);
        ds.X(i, col) = std::clamp(prototype(i) + jitter, 0.0, 1.0);
      }
      ds.labels.push_back(s);
    }
  }
  return ds;
}

std::vector<Index> subsample_indices(Index n, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw std::invalid_argument("subsample: fraction must be in (0, 1]");
  const auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 1e-9));
  if (count < 1) throw std::invalid_argument("subsample: fraction * n must be at least 1");
  Rng rng(seed);
  const auto picked = rng.sample_without_replacement(static_cast<std::size_t>(n), count);
  return {picked.begin(), picked.end()};
}

Dataset subsample(const Dataset& ds, double fraction, std::uint64_t seed) {
  const auto idx = subsample_indices(ds.samples(), fraction, seed);
  Dataset out;
  out.height = ds.height;
  out.width = ds.width;
  out.X.resize(ds.pixels(), static_cast<Index>(idx.size()));
  out.labels.reserve(idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) {
    out.X.col(static_cast<Index>(j)) = ds.X.col(idx[j]);
    out.labels.push_back(ds.labels[static_cast<std::size_t>(idx[j])]);
  }
  return out;
}

int count_distinct(const Labels& labels) {
  return static_cast<int>(std::set<int>(labels.begin(), labels.end()).size());
}

}  // namespace rnmf
