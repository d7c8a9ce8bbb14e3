import re
V=set('aeiouy')
def vg(w):
    g=0;ing=False
    for i,c in enumerate(w):
        v=c in V and not(i==0 and c=='y')
        if v and not ing: g+=1
        ing=v
    return g
def cons(c): return 'a'<=c<='z' and c not in V
def hiatus(w):
    e=0
    for i in range(len(w)-1):
        a,b=w[i],w[i+1]; p=w[i-1] if i>0 else ''
        if a=='i' and b=='a' and p not in 'ctsg' or (a=='i' and b=='a' and p==''): e+= (a=='i' and b=='a' and (p=='' or p not in 'ctsg'))
        if a=='u' and b=='a' and (p=='' or p not in 'qg'): e+=1
        if a=='i' and b=='o' and p in ('d','r','b'): e+=1
        if a=='e' and b=='o' and (p=='d' or (i==1 and p in ('g','n'))): e+=1
        if a=='y' and b=='i' and i>0: e+=1
        if a=='u' and b=='o' and (p=='' or p!='q'): e+=1
    if w.startswith('reo'): e+=1
    return e
def silent(w):
    for s in ('ment','ful','less','ness','ly'):
        if len(w)<len(s)+3 or not w.endswith(s): continue
        e=len(w)-len(s)-1
        if w[e]=='e' and cons(w[e-1]) and w[e-2] in V: return 1
    return 0
def count(word):
    w=word.lower()
    assert w.isalpha() and w.isascii()
    if len(w)<=3: return 1
    s=w
    if s.endswith('es'):
        p=s[-3]; pp=s[-4] if len(s)>=4 else ''
        keep = p in 'sxzgc' or (p=='h' and pp in ('c','s') and pp!='') or (p=='l' and pp!='' and cons(pp))
        if not keep: s=s[:-2]
    elif s.endswith('ed'):
        if s[-3] not in 'td': s=s[:-2]
    elif s.endswith('e'):
        p=s[-2]
        cle = p=='l' and len(s)>=3 and cons(s[-3])
        if not cle and p!='e': s=s[:-1]
    return max(vg(s)+hiatus(s)-silent(w),1)
