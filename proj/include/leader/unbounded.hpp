#pragma once

#include <string>

#include "leader/tree.hpp"

namespace leader {

AdviceAssignment advice_unbounded(const PortLabeledTree& t, int tau);
PathCode elect_unbounded(const LabeledBall& ball, int tau);

// structural facts the scheme relies on; returns an empty string when all hold
std::string check_unbounded_structure(const PortLabeledTree& t, const AdviceAssignment& a, int tau);

}  // namespace leader
