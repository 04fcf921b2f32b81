#ifndef QHOM_QHOM_HPP
#define QHOM_QHOM_HPP

#include "scalar.hpp"
#include "matrix.hpp"
#include "linalg.hpp"
#include "algebra.hpp"
#include "quiver.hpp"
#include "module.hpp"
#include "homological.hpp"
#include "tensor.hpp"
#include "verdict.hpp"
#include "extensions.hpp"
#include "invariants.hpp"
#include "checker.hpp"
#include "random_instances.hpp"
#include "document.hpp"
#include "report.hpp"
#include "example_data.hpp"
#include "app.hpp"

#endif  // QHOM_QHOM_HPP
