#pragma once

#include <initializer_list>

#include "essp/tableau.hpp"

namespace essp::detail {

/// Builds an explicit tableau from the strictly lower rows of A (row i holds
/// a_i1..a_i,i-1; the first row is empty) and the weights.
ButcherTableau lower_tableau(std::initializer_list<std::initializer_list<double>> rows,
                             std::initializer_list<double> b);

ButcherTableau essprk442_main();
ButcherTableau essprk442_start();
ButcherTableau essprk442_stop();

ButcherTableau essprk443_main();
ButcherTableau essprk443_start();
ButcherTableau essprk443_stop();

ButcherTableau essprk542_main();
ButcherTableau essprk542_start();
ButcherTableau essprk542_stop();

ButcherTableau essprk332_start();
ButcherTableau essprk332_stop();
ButcherTableau essprk432_start();
ButcherTableau essprk432_stop();

}  // namespace essp::detail
