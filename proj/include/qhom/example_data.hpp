#ifndef QHOM_EXAMPLE_DATA_HPP
#define QHOM_EXAMPLE_DATA_HPP

namespace qhom {

/// Same bytes as data/example-4-5.qha; a unit test keeps the two in sync.
inline constexpr const char *example_4_5_document = R"qha(# Lambda = kQ/(gamma^2, alpha beta) and its subalgebra Gamma.
# Paths compose right to left: beta*gamma means gamma first, then beta.
field q

quiver Lambda
  vertices 1 2
  arrow gamma 1 1
  arrow beta 1 2
  arrow alpha 2 1
  relations gamma*gamma, alpha*beta
end

quiver Gamma
  vertices 1 2
  arrow gamma 1 1
  arrow beta 1 2
  relation gamma*gamma
end

# Gamma sits inside Lambda on the paths avoiding alpha; the retraction kills
# the ideal generated by alpha.
construct ext = subalgebra Lambda Gamma
  image e1 = e1
  image e2 = e2
  image gamma = gamma
  image beta = beta
  image beta*gamma = beta*gamma
  retract by-label
end

check extension ext
  cap 12
  pmax 8
  hh 4
end
)qha";

}  // namespace qhom

#endif  // QHOM_EXAMPLE_DATA_HPP
