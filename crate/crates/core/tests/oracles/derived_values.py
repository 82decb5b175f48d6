"""Hand-evaluated spot values frozen into the unit tests."""
import math

x = [579.30675, 1359.97076, 5109.97052, 182.01770, 295.60118, 217.98230, 286.41653, 395.60118]
x1, x2, x3, x4, x5, x6, x7, x8 = x
print("heat g5 (1250 x4):", 1250 * x5 + x2 * x4 - x2 * x7 - 1250 * x4)

x = [78, 33, 27, 27, 27]
print("himmelblau f corner:", 5.3578547 * x[2] ** 2 + 0.8356891 * x[0] * x[4] + 37.293239 * x[0] - 40792.141)
print("himmelblau g1 corner:", 85.334407 + 0.0056858 * x[1] * x[4] + 0.0006262 * x[0] * x[3] - 0.0022053 * x[2] * x[4])

x = [3.5, 0.7, 17, 7.3, 7.3, 3.35, 5.29]
f = (0.7854 * x[0] * x[1] ** 2 * (3.3333 * x[2] ** 2 + 14.9334 * x[2] - 43.0934)
     - 1.508 * x[0] * (x[5] ** 2 + x[6] ** 2) + 7.477 * (x[5] ** 3 + x[6] ** 3)
     + 0.7854 * (x[3] * x[5] ** 2 + x[4] * x[6] ** 2))
print("speed reducer f:", f)
xs = [3.5, 0.7, 17, 7.3, 7.715319911, 3.350214666, 5.286654465]
f = (0.7854 * xs[0] * xs[1] ** 2 * (3.3333 * xs[2] ** 2 + 14.9334 * xs[2] - 43.0934)
     - 1.508 * xs[0] * (xs[5] ** 2 + xs[6] ** 2) + 7.477 * (xs[5] ** 3 + xs[6] ** 3)
     + 0.7854 * (xs[3] * xs[5] ** 2 + xs[4] * xs[6] ** 2))
print("speed reducer f (literature optimum):", f)

print("math N=4 all 2.5:", sum(math.sqrt(i) for i in range(1, 5)) * 2.25)
print("truss (1,1):", 100 * (2 * math.sqrt(2) + 1))
print("truss reported:", 100 * (2 * math.sqrt(2) * 0.78863 + 0.40838))
print("loudness 2*0.9^10:", 2 * 0.9 ** 10)
print("pulse 1-e^-0.9:", 1 - math.exp(-0.9))

# stepped cantilever deflection with segment length 100 vs total length 500
P, E = 50000.0, 2e7
b, h = 5.0, 65.0
inertia = b * h ** 3 / 12
for l in (100.0, 500.0):
    print(f"cantilever max-section deflection, l={l}:", P * l ** 3 / (3 * E) * 125 / inertia)
