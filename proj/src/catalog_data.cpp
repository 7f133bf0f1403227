// Coefficient tables. The ESSPRK(4,4,2) and ESSPRK(4,4,3) schemes are the
// published 15-digit values. The remaining starting/stopping methods and the
// five-stage main method were produced by `esspctl optimize` and its
// start/stop search with the seeds noted beside each table.
#include "catalog_data.hpp"

#include <cstddef>

namespace essp::detail {

ButcherTableau lower_tableau(std::initializer_list<std::initializer_list<double>> rows,
                             std::initializer_list<double> b) {
  const auto s = static_cast<Eigen::Index>(b.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(s, s);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double x : row) a(i, j++) = x;
    ++i;
  }
  Eigen::VectorXd w(s);
  Eigen::Index k = 0;
  for (double x : b) w(k++) = x;
  return ButcherTableau(std::move(a), std::move(w));
}

ButcherTableau essprk442_main() {
  return lower_tableau(
      {{},
       {0.730429885783319},
       {0.251830917810810, 0.393133720334985},
       {0.141062771617064, 0.220213358584678, 0.638723869798257}},
      {0.384422161080494, 0.261154113377550, 0.127250689937518, 0.227173035604438});
}

ButcherTableau essprk442_start() {
  return lower_tableau(
      {{},
       {0.545722177514735},
       {0.366499989048164, 0.476431698393363},
       {0.135697968350722, 0.176400587890242, 0.262662253246864},
       {0.103648417776838, 0.134737771331049, 0.200625899485633, 0.541860654643112}},
      {0.233699169638954, 0.294263351266422, 0.065226988215286, 0.176168374199685,
       0.230642116679654});
}

ButcherTableau essprk442_stop() {
  return lower_tableau(
      {{},
       {0.509877496215340},
       {0.182230305923759, 0.253543829605247},
       {0.148498121305090, 0.206610981494095, 0.578094238501017}},
      {0.307865440399752, 0.171863794704750, 0.233603236964822, 0.286667527930676});
}

ButcherTableau essprk443_main() {
  return lower_tableau(
      {{},
       {0.601245068769724},
       {0.139346829159954, 0.297541890726109},
       {0.060555450075478, 0.129301708677891, 0.557903005003740}},
      {0.220532078662434, 0.180572397883936, 0.181420582644840, 0.417474940808790});
}

ButcherTableau essprk443_start() {
  return lower_tableau(
      {{},
       {0.438463764036947},
       {0.213665532574654, 0.425670863150903},
       {0.061345094040860, 0.122213530726218, 0.250794800886942},
       {0.039559973266996, 0.078812561688700, 0.161731525131914, 0.563312404874697}},
      {0.154373542967849, 0.307547588471376, 0.054439037790856, 0.189611674483496,
       0.294028156286422});
}

ButcherTableau essprk443_stop() {
  return lower_tableau(
      {{},
       {0.556337718891090},
       {0.166867537553458, 0.262003150663414},
       {0.104422177204659, 0.163956032598547, 0.546630737839510}},
      {0.203508169408374, 0.096469758967330, 0.321630956102914, 0.378391115521382});
}

// GENERATED-BEGIN
// optimize --s 5 --q 4 --p 2 --seed 1 --restarts 8 --max-radius 1.95
ButcherTableau essprk542_main() {
  return lower_tableau(
      {{},
       {0.5128205128104429},
       {0.4081632653104254, 0.4081632653184402},
       {0.22352347078921453, 0.2235234707936037, 0.2808371812450268},
       {0.23276506795494842, 0.21621428114392435, 0.2716538404033991, 0.49605134593551914}},
      {0.33155207920055785, 0.30249391044358503, 0.0776343749988391, 0.141763636221191, 0.14655599913582706});
}

// optimize --main ESSPRK(5,4,2) --q 4 --p 2 --seed 1 --restarts 8
ButcherTableau essprk542_start() {
  return lower_tableau(
      {{},
       {0.4781649747383581},
       {0.3909557147783447, 0.3909557147783447},
       {0.18111627468984745, 0.1811162746898318, 0.22151731164965688},
       {0.10993234613052204, 0.10993234613051255, 0.13445460834413747, 0.29023232506546137},
       {0.16719360345085998, 0.16719360345085227, 0.10877553814352575, 0.2348017500808759, 0.3868417236798868}},
      {0.23271983104060834, 0.23271983104060492, 0.04811174818626329, 0.10385352135587114, 0.17110125966988388, 0.21149380870677031});
}

ButcherTableau essprk542_stop() {
  return lower_tableau(
      {{},
       {0.27380919408436893},
       {0.19141962299378584, 0.33428446221220176},
       {0.17636760415236147, 0.3079984631859618, 0.4405651294533691},
       {0.14337322097347846, 0.25037892834165043, 0.3581453746101655, 0.38871114065611845}},
      {0.203999825862809, 0.24875505367584033, 0.35582256252582434, 0.08583473407681781, 0.1055878238587069});
}

// optimize --main ESSPRK(3,3,2), gamma = kDefaultGamma332 --q 3 --p 2 --seed 1 --restarts 8
ButcherTableau essprk332_start() {
  return lower_tableau(
      {{},
       {0.6315789640151676},
       {0.631578828460162, 0.631578828460162},
       {0.34368127704630225, 0.34368127704629425, 0.3436813508101941}},
      {0.40924478829912414, 0.15393517562138367, 0.15393520866030558, 0.2828848274191859});
}

ButcherTableau essprk332_stop() {
  return lower_tableau(
      {{},
       {0.6315789640151676},
       {0.24817571070280128, 0.24817571070280128}},
      {0.2204532666605263, 0.21990740161124095, 0.5596393317282328});
}

// optimize --main ESSPRK(4,3,2), gamma = kDefaultGamma432 --q 3 --p 2 --seed 1 --restarts 8
ButcherTableau essprk432_start() {
  return lower_tableau(
      {{},
       {0.4300558178171941},
       {0.43005516777976865, 0.4300551677797687},
       {0.20100137960581296, 0.20100137960517456, 0.20100168342298466},
       {0.17042293773399486, 0.17042293773345357, 0.1704231953313042, 0.3646312080331688}},
      {0.2611139267332884, 0.11089340215899508, 0.1108935697767021, 0.2372638080877599, 0.279835293243253});
}

ButcherTableau essprk432_stop() {
  return lower_tableau(
      {{},
       {0.4300558178171941},
       {0.4300558178171941, 0.4300558178171941},
       {0.24374728428190215, 0.22319072033509804, 0.22319072033509804}},
      {0.2853572390792284, 0.20729162760176137, 0.17334353616107356, 0.33400759715793543});
}
// GENERATED-END

}  // namespace essp::detail
