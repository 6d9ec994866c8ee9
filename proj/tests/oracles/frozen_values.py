# Independent high-precision evaluation (mpmath) of the values frozen into the C++ tests.
# The annulus coordinates come from the complex root of A zeta^2 - W zeta + B = 0
# rather than the closed-form real inversion used by the library.
from mpmath import mp, mpf, sqrt, cos, sin, pi, atan2, log, exp, mpc, nsum, inf
mp.dps = 40
def geom(rho, R=1):
    a = R/sqrt(1-abs(rho)); b = R/sqrt(1+abs(rho))
    q = sqrt((a-b)/(a+b)); return a,b,q
def kern(r,th,tau,q):
    f = lambda k: r**k*((1+(q/r)**(2*k))/(1+q**(2*k))*cos(k*th)*cos(k*tau) + (1-(q/r)**(2*k))/(1-q**(2*k))*sin(k*th)*sin(k*tau))
    return 1/(2*pi) + nsum(f,[1,inf])/pi
a,b,q = geom(mpf('0.5'))
print("a b q", a, b, q)
print("K(0.6,1,2)", kern(mpf('0.6'),mpf(1),mpf(2),q))
A=(a+b)/2; B=(a-b)/2
r=(1+q)/2; th=pi/3
print("ann2ell", (A*r+B/r)*cos(th), (A*r-B/r)*sin(th))
# full pipeline via complex Joukowski inverse
def density(rho, x, y, alpha, R=1):
    rho=mpf(rho); a,b,q = geom(rho,R); A=(a+b)/2; B=(a-b)/2
    s = -1 if rho<0 else 1
    lo=sqrt(2*(1-abs(rho))); hi=sqrt(2*(1+abs(rho)))
    w=(x - s*y)/lo; z=(s*x+y)/hi
    W=mpc(w,z)
    # A zeta^2 - W zeta + B = 0
    d=sqrt(W*W-4*A*B)
    cands=[(W+d)/(2*A),(W-d)/(2*A)]
    zeta=max(cands,key=lambda c: abs(c))
    r=abs(zeta); th=atan2(zeta.imag, zeta.real)
    tau = atan2(sin(alpha)*R*(s*1)/hi/b*0 + (s*R*cos(alpha)+R*sin(alpha))/hi/b, (R*cos(alpha)-s*R*sin(alpha))/lo/a)
    return kern(r,th,tau,q), r, th
print("density(0.5,0.2,0.1,1.0)", density('0.5',mpf('0.2'),mpf('0.1'),mpf('1.0')))
print("density(-0.7,-0.3,0.4,2.5)", density('-0.7',mpf('-0.3'),mpf('0.4'),mpf('2.5')))
print("density(0.9,0.5,-0.6,4.0)", density('0.9',mpf('0.5'),mpf('-0.6'),mpf('4.0')))
