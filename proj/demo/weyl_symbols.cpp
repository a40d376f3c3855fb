// Principal symbols in the Weyl algebra A_1(Q) with the 3-adic valuation.
// Multiplying symbols in G_v(A_1) = A_1(F_3)[t, t^-1] agrees with taking the
// symbol of the product.

#include <iostream>

#include "grval/grval.hpp"

int main()
{
    using namespace grval;
    const RationalField QQ;
    const GaussContext<PAdicRationals> ctx(PAdicRationals(3), make_weyl(1, QQ));
    const auto& spec = ctx.spec();
    const auto names = spec.names();

    const auto a = parse_element(spec, "x/3 + 9*D");
    const auto b = parse_element(spec, "D^2 + 6*x*D - 1/9*x*D + 1/9");
    const auto ab = pbw_multiply(spec, a, b);

    const auto sa = principal_symbol(ctx, a), sb = principal_symbol(ctx, b);
    const auto sab = principal_symbol(ctx, ab);
    const auto prod = symbol_multiply(ctx, sa, sb);

    std::cout << "a       = " << a.to_string(names) << "   v = " << ctx.gauss_valuation(a).to_string() << "\n";
    std::cout << "b       = " << b.to_string(names) << "   v = " << ctx.gauss_valuation(b).to_string() << "\n";
    std::cout << "a*b     = " << ab.to_string(names) << "   v = " << ctx.gauss_valuation(ab).to_string() << "\n\n";
    std::cout << "s(a)    = t^" << sa.degree << " * (" << sa.residue.to_string(names) << ")\n";
    std::cout << "s(b)    = t^" << sb.degree << " * (" << sb.residue.to_string(names) << ")\n";
    std::cout << "s(a)s(b)= t^" << prod.degree << " * (" << prod.residue.to_string(names) << ")\n";
    std::cout << "s(ab)   = t^" << sab.degree << " * (" << sab.residue.to_string(names) << ")\n";
    std::cout << (prod == sab ? "symbols agree\n" : "symbols differ\n");
    return prod == sab ? 0 : 1;
}
