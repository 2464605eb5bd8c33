#include "ghrelax/classification.hpp"

#include <cmath>
#include <limits>

#include "ghrelax/error.hpp"

namespace ghrelax {

ClassificationReport nearest_neighbor_classify(const Eigen::MatrixXd& distances,
                                               const std::vector<std::string>& labels) {
  const auto k = static_cast<int>(labels.size());
  if (distances.rows() != distances.cols()) throw Error(ErrorCode::NotSquare, "distance matrix must be square");
  if (distances.rows() != k) throw Error(ErrorCode::DimensionMismatch, "one label per row required");
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "need at least two items");

  ClassificationReport rep;
  rep.distances = distances;
  rep.truth = labels;
  for (int a = 0; a < k; ++a) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int b = 0; b < k; ++b) {
      if (b == a || std::isnan(distances(a, b))) continue;
      if (best < 0 || distances(a, b) < best_d) {
        best = b;
        best_d = distances(a, b);
      }
    }
    rep.nearest.push_back(best);
    rep.predicted.push_back(best >= 0 ? labels[best] : std::string{});
    if (best >= 0 && labels[best] == labels[a]) ++rep.correct;
  }
  rep.success_frequency = static_cast<double>(rep.correct) / k;
  return rep;
}

}  // namespace ghrelax
