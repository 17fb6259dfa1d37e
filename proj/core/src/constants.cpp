#include "stackcalc/constants.hpp"

namespace stackcalc {

namespace {

std::map<std::string, TermPtr> build_table() {
  std::map<std::string, TermPtr> table;
  VarName a{"a"}, b{"b"}, g{"g"}, d{"d"}, f{"f"}, x{"x"};

  auto va = [&] { return svar(a); };

  TermPtr I = abs(a, app(car(va()), cdr(va())));
  TermPtr T = abs(a, app(car(va()), cdrn(va(), 2)));
  TermPtr F = abs(a, app(carn(va(), 1), cdrn(va(), 2)));
  TermPtr omega = abs(a, app(car(va()), va()));
  TermPtr Omega = abs(g, app(omega, push(omega, svar(g))));

  // HP-completeness witnesses.
  TermPtr u = abs(
      x, app(car(svar(f)),
             push(abs(b, app(car(svar(x)), push(car(svar(x)), svar(b)))),
                  cdr(svar(x)))));
  TermPtr U = abs(g, app(u, push(u, svar(g))));
  TermPtr Y = abs(f, app(U, cdr(svar(f))));
  TermPtr Tinf = abs(d, app(Y, push(T, svar(d))));

  TermPtr wrapU = abs(g, app(car(va()), va()));

  table["I"] = I;
  table["T"] = T;
  table["F"] = F;
  table["omega"] = omega;
  table["Omega"] = Omega;
  table["u"] = u;
  table["U"] = U;
  table["Y"] = Y;
  table["Tinf"] = Tinf;
  table["wrapU"] = wrapU;
  return table;
}

}  // namespace

const std::map<std::string, TermPtr>& constants() {
  static const std::map<std::string, TermPtr> table = build_table();
  return table;
}

TermPtr constant(const std::string& name) {
  const auto& table = constants();
  auto it = table.find(name);
  if (it == table.end()) throw Error("unknown constant: " + name);
  return it->second;
}

TermPtr wrap(const TermPtr& hole) {
  VarName a{"a"}, b{"b"};
  TermPtr wrapU = constant("wrapU");
  StackPtr inner = push(wrapU, push(hole, svar(a)));
  TermPtr left = abs(b, app(car(svar(a)), inner));
  return abs(a, app(car(svar(a)), push(left, push(wrapU, svar(a)))));
}

}  // namespace stackcalc
